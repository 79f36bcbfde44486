#pragma once

#include <boost/multiprecision/float128.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <limits>
#include <mutex>
#include <string>
#include <type_traits>

#include "helmdpg/errors.hpp"

namespace helmdpg {

/// 113-bit binary floating point (about 33 significant decimal digits).
using Quad = boost::multiprecision::float128;
/// Runtime-precision MPFR float; used when more than 33 digits are requested.
using MpReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                             boost::multiprecision::et_off>;

enum class PrecisionKind { Double, Extended };

struct Precision {
  PrecisionKind kind = PrecisionKind::Double;
  int digits = 16;

  static Precision double_precision() { return {PrecisionKind::Double, 16}; }
  static Precision extended(int digits = 32) {
    if (digits < 30) {
      throw Error(ErrorKind::UnsupportedPrecision,
                  "extended precision needs at least 30 digits, got " + std::to_string(digits));
    }
    return {PrecisionKind::Extended, digits};
  }

  bool is_extended() const { return kind == PrecisionKind::Extended; }

  std::string name() const {
    return is_extended() ? "extended(" + std::to_string(digits) + ")" : "double";
  }

  friend bool operator==(const Precision&, const Precision&) = default;
};

template <typename R>
inline constexpr bool is_builtin_real_v = std::is_floating_point_v<R>;

template <typename R>
double to_double(const R& x) {
  return static_cast<double>(x);
}

/// Sets the MPFR working precision for the lifetime of the guard. The default
/// precision is process-wide, so guarded sections are serialized.
class MpPrecisionGuard {
 public:
  explicit MpPrecisionGuard(int digits) : lock_(mutex()), saved_(MpReal::default_precision()) {
    MpReal::default_precision(static_cast<unsigned>(digits));
  }
  ~MpPrecisionGuard() { MpReal::default_precision(saved_); }
  MpPrecisionGuard(const MpPrecisionGuard&) = delete;
  MpPrecisionGuard& operator=(const MpPrecisionGuard&) = delete;

 private:
  static std::recursive_mutex& mutex() {
    static std::recursive_mutex m;
    return m;
  }
  std::lock_guard<std::recursive_mutex> lock_;
  unsigned saved_;
};

/// Invokes `f.template operator()<R>()` with the real type matching `prec`:
/// double, Quad for up to 33 digits, MpReal beyond.
template <typename F>
decltype(auto) with_precision(const Precision& prec, F&& f) {
  if (!prec.is_extended()) return f.template operator()<double>();
  if (prec.digits < 30) {
    throw Error(ErrorKind::UnsupportedPrecision, "extended precision needs >= 30 digits");
  }
  if (prec.digits <= std::numeric_limits<Quad>::digits10) return f.template operator()<Quad>();
  MpPrecisionGuard guard(prec.digits + 4);
  return f.template operator()<MpReal>();
}

}  // namespace helmdpg
