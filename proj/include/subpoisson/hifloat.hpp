#pragma once

// HiFloat: an MPFR-backed binary floating value that carries a first-order
// bound on its accumulated relative error.
//
// Precision rules:
//  - values built from integers, doubles, rationals and decimal strings take
//    the thread's working precision (see WorkingPrecision);
//  - arithmetic results take the widest operand precision, so precision is
//    never lowered implicitly.
//
// Error budget: rel_error() bounds |computed - exact| / |exact| where "exact"
// is the real-number result of the same expression on exact inputs. The bound
// is first order (products of error terms are dropped). Correct rounding of
// MPFR contributes 2^-p per inexact operation; exact operations contribute 0.

#include <mpfr.h>
#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>

namespace subpoisson {

using Bits = mpfr_prec_t;
inline constexpr Bits kDefaultBits = 113;
/// Doubles convert exactly at this precision and above.
inline constexpr Bits kMinBits = 53;

/// RAII guard setting the thread-local working precision.
class WorkingPrecision {
 public:
  explicit WorkingPrecision(Bits bits);
  ~WorkingPrecision();
  WorkingPrecision(const WorkingPrecision&) = delete;
  WorkingPrecision& operator=(const WorkingPrecision&) = delete;

  static Bits current() noexcept;

 private:
  Bits saved_;
};

/// Relative size of one rounding at `bits` of precision (2^-bits).
double unit_roundoff(Bits bits) noexcept;

class HiFloat {
 public:
  HiFloat();
  template <std::integral I>
  HiFloat(I v) : HiFloat(Uninit{}, WorkingPrecision::current()) {
    if constexpr (std::is_signed_v<I>)
      assign_ternary(mpfr_set_si(v_, static_cast<long>(v), MPFR_RNDN));
    else
      assign_ternary(mpfr_set_ui(v_, static_cast<unsigned long>(v), MPFR_RNDN));
  }
  HiFloat(double v);
  explicit HiFloat(const mpz_class& v);
  explicit HiFloat(const mpq_class& v);

  HiFloat(const HiFloat& other);
  HiFloat(HiFloat&& other) noexcept;
  HiFloat& operator=(const HiFloat& other);
  HiFloat& operator=(HiFloat&& other) noexcept;
  ~HiFloat();

  /// Parses a decimal or scientific literal ("0.3", "1e-6", "inf").
  static HiFloat parse(std::string_view text);
  static HiFloat euler();
  static HiFloat infinity(int sign = 1);

  Bits precision() const noexcept { return mpfr_get_prec(v_); }
  double rel_error() const noexcept { return err_; }
  /// Copy rounded to `bits` (may be wider or narrower than the source).
  HiFloat rounded_to(Bits bits) const;
  /// Replaces the error budget; used by iterative solvers that certify their
  /// own result by a residual.
  void set_rel_error(double e) noexcept { err_ = e; }

  int sign() const noexcept { return mpfr_sgn(v_); }
  bool is_zero() const noexcept { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const noexcept { return mpfr_number_p(v_) != 0; }
  bool is_nan() const noexcept { return mpfr_nan_p(v_) != 0; }
  bool is_integer() const noexcept { return mpfr_integer_p(v_) != 0; }

  double to_double() const noexcept { return mpfr_get_d(v_, MPFR_RNDN); }
  long to_long_ceil() const;
  long to_long_floor() const;
  /// Scientific notation with `significant` digits, e.g. "1.4426950408889634e+00".
  std::string to_string(int significant = 30) const;
  /// %g-style rendering with `significant` digits, trailing zeros kept.
  std::string to_display(int significant = 30) const;

  mpfr_srcptr raw() const noexcept { return v_; }

  HiFloat operator-() const;
  HiFloat& operator+=(const HiFloat& o);
  HiFloat& operator-=(const HiFloat& o);
  HiFloat& operator*=(const HiFloat& o);
  HiFloat& operator/=(const HiFloat& o);

  friend HiFloat operator+(const HiFloat& a, const HiFloat& b);
  friend HiFloat operator-(const HiFloat& a, const HiFloat& b);
  friend HiFloat operator*(const HiFloat& a, const HiFloat& b);
  friend HiFloat operator/(const HiFloat& a, const HiFloat& b);
  friend bool operator==(const HiFloat& a, const HiFloat& b) noexcept;
  friend std::partial_ordering operator<=>(const HiFloat& a,
                                           const HiFloat& b) noexcept;

  friend HiFloat exp(const HiFloat& x);
  friend HiFloat expm1(const HiFloat& x);
  friend HiFloat log(const HiFloat& x);
  friend HiFloat log1p(const HiFloat& x);
  friend HiFloat sqrt(const HiFloat& x);
  friend HiFloat pow(const HiFloat& base, const HiFloat& exponent);
  friend HiFloat abs(const HiFloat& x);

 private:
  struct Uninit {};
  HiFloat(Uninit, Bits bits);
  void assign_ternary(int ternary) noexcept;

  mpfr_t v_;
  double err_ = 0.0;
};

HiFloat min(const HiFloat& a, const HiFloat& b);
HiFloat max(const HiFloat& a, const HiFloat& b);

}  // namespace subpoisson
