#include "helmdpg/cli/run.hpp"

int main(int argc, char** argv) { return helmdpg::run(argc, argv); }
