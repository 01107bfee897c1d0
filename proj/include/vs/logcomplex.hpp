#ifndef VS_LOGCOMPLEX_HPP
#define VS_LOGCOMPLEX_HPP

#include <cmath>

#include "vs/common.hpp"

namespace vs {

// Complex number stored as (log10 of modulus, argument in radians).
// The argument is a plain real number: it is NOT reduced mod 2*pi, so a
// sequence of values can carry a continuously unwrapped phase and products
// simply add arguments. Exact zero is carried as a flag so that no
// non-finite arithmetic is needed.
struct LogComplex {
  double log10_mod = 0.0;
  double arg = 0.0;
  bool is_zero = false;

  static LogComplex zero() {
    LogComplex z;
    z.is_zero = true;
    return z;
  }

  static LogComplex from_value(cplx v) {
    LogComplex r;
    double m = std::abs(v);
    if (m == 0.0) {
      r.is_zero = true;
      return r;
    }
    r.log10_mod = std::log10(m);
    r.arg = std::arg(v);
    return r;
  }

  // Build from a natural-log representation ln(z) = re + i*im.
  static LogComplex from_ln(cplx ln_value) {
    LogComplex r;
    r.log10_mod = ln_value.real() / LN10;
    r.arg = ln_value.imag();
    return r;
  }

  // Natural log as a complex number (modulus part only well-defined if nonzero).
  cplx ln() const { return cplx(log10_mod * LN10, arg); }

  // Reconstruct the value; may overflow/underflow double range by design.
  cplx value() const {
    if (is_zero) return cplx(0.0, 0.0);
    double m = std::pow(10.0, log10_mod);
    return cplx(m * std::cos(arg), m * std::sin(arg));
  }

  LogComplex operator*(const LogComplex& o) const {
    if (is_zero || o.is_zero) return zero();
    LogComplex r;
    r.log10_mod = log10_mod + o.log10_mod;
    r.arg = arg + o.arg;
    return r;
  }

  LogComplex operator/(const LogComplex& o) const {
    if (o.is_zero) throw numerical_error("DivideByZero", "LogComplex division by exact zero");
    if (is_zero) return zero();
    LogComplex r;
    r.log10_mod = log10_mod - o.log10_mod;
    r.arg = arg - o.arg;
    return r;
  }
};

// Principal-branch wrap of an angle difference into (-pi, pi].
inline double wrap_angle(double a) {
  double w = std::remainder(a, 2.0 * PI);
  if (w <= -PI) w += 2.0 * PI;
  return w;
}

// |1 - b/a| computed in log scale; saturates when the ratio is enormous.
inline double relative_gap(const LogComplex& a, const LogComplex& b) {
  if (a.is_zero && b.is_zero) return 0.0;
  if (a.is_zero || b.is_zero) return 1e300;
  double dl = b.log10_mod - a.log10_mod;
  if (dl > 3.0) return 1e300;
  if (dl < -3.0) return 1.0;  // ratio ~ 0, |1 - r| ~ 1
  double da = wrap_angle(b.arg - a.arg);
  cplx ratio = std::pow(10.0, dl) * cplx(std::cos(da), std::sin(da));
  return std::abs(1.0 - ratio);
}

}  // namespace vs

#endif  // VS_LOGCOMPLEX_HPP
