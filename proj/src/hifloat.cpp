#include "subpoisson/hifloat.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <limits>
#include <string>

#include "subpoisson/errors.hpp"

namespace subpoisson {
namespace {

thread_local Bits g_working_bits = kDefaultBits;

constexpr double kInf = std::numeric_limits<double>::infinity();

// |a| / |b| as a double, robust to exponents outside the double range.
double abs_ratio(mpfr_srcptr a, mpfr_srcptr b) {
  if (mpfr_zero_p(a)) return 0.0;
  if (mpfr_zero_p(b) || !mpfr_number_p(a) || !mpfr_number_p(b)) return kInf;
  long ea = 0;
  long eb = 0;
  const double ma = mpfr_get_d_2exp(&ea, a, MPFR_RNDN);
  const double mb = mpfr_get_d_2exp(&eb, b, MPFR_RNDN);
  const long shift = std::clamp(ea - eb, -100000L, 100000L);
  return std::ldexp(std::fabs(ma / mb), static_cast<int>(shift));
}

double abs_value(mpfr_srcptr a) {
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, a, MPFR_RNDN);
  if (!mpfr_number_p(a)) return kInf;
  return std::ldexp(std::fabs(m), static_cast<int>(std::clamp(e, -100000L, 100000L)));
}

double rounding(int ternary, Bits bits) {
  return ternary == 0 ? 0.0 : unit_roundoff(bits);
}

// First-order relative error of a +/- b given the computed result r.
double sum_error(const HiFloat& a, const HiFloat& b, mpfr_srcptr r) {
  if (a.rel_error() == 0.0 && b.rel_error() == 0.0) return 0.0;
  if (mpfr_zero_p(r)) return kInf;
  double e = 0.0;
  if (a.rel_error() != 0.0) e += abs_ratio(a.raw(), r) * a.rel_error();
  if (b.rel_error() != 0.0) e += abs_ratio(b.raw(), r) * b.rel_error();
  return e;
}

}  // namespace

WorkingPrecision::WorkingPrecision(Bits bits) : saved_(g_working_bits) {
  if (bits < kMinBits || bits > MPFR_PREC_MAX)
    throw PrecisionError("working precision out of range: " + std::to_string(bits));
  g_working_bits = bits;
}

WorkingPrecision::~WorkingPrecision() { g_working_bits = saved_; }

Bits WorkingPrecision::current() noexcept { return g_working_bits; }

double unit_roundoff(Bits bits) noexcept {
  return std::ldexp(1.0, -static_cast<int>(std::min<Bits>(bits, 1070)));
}

HiFloat::HiFloat(Uninit, Bits bits) { mpfr_init2(v_, bits); }

HiFloat::HiFloat() : HiFloat(Uninit{}, WorkingPrecision::current()) {
  mpfr_set_zero(v_, 1);
}

HiFloat::HiFloat(double v) : HiFloat(Uninit{}, WorkingPrecision::current()) {
  assign_ternary(mpfr_set_d(v_, v, MPFR_RNDN));
}

HiFloat::HiFloat(const mpz_class& v) : HiFloat(Uninit{}, WorkingPrecision::current()) {
  assign_ternary(mpfr_set_z(v_, v.get_mpz_t(), MPFR_RNDN));
}

HiFloat::HiFloat(const mpq_class& v) : HiFloat(Uninit{}, WorkingPrecision::current()) {
  assign_ternary(mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN));
}

HiFloat::HiFloat(const HiFloat& other) : HiFloat(Uninit{}, other.precision()) {
  mpfr_set(v_, other.v_, MPFR_RNDN);
  err_ = other.err_;
}

HiFloat::HiFloat(HiFloat&& other) noexcept : HiFloat(Uninit{}, MPFR_PREC_MIN) {
  mpfr_swap(v_, other.v_);
  err_ = other.err_;
}

HiFloat& HiFloat::operator=(const HiFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
    err_ = other.err_;
  }
  return *this;
}

HiFloat& HiFloat::operator=(HiFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  std::swap(err_, other.err_);
  return *this;
}

HiFloat::~HiFloat() { mpfr_clear(v_); }

void HiFloat::assign_ternary(int ternary) noexcept {
  err_ = rounding(ternary, precision());
}

HiFloat HiFloat::parse(std::string_view text) {
  const std::string s(text);
  HiFloat r(Uninit{}, WorkingPrecision::current());
  char* end = nullptr;
  const int t = mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
  if (s.empty() || end != s.c_str() + s.size())
    throw DomainError("not a decimal number: '" + s + "'");
  r.assign_ternary(t);
  return r;
}

HiFloat HiFloat::euler() {
  HiFloat one(1);
  return exp(one);
}

HiFloat HiFloat::infinity(int sign) {
  HiFloat r(Uninit{}, WorkingPrecision::current());
  mpfr_set_inf(r.v_, sign);
  return r;
}

HiFloat HiFloat::rounded_to(Bits bits) const {
  HiFloat r(Uninit{}, bits);
  const int t = mpfr_set(r.v_, v_, MPFR_RNDN);
  r.err_ = err_ + rounding(t, bits);
  return r;
}

long HiFloat::to_long_ceil() const {
  if (!is_finite()) throw DomainError("cannot convert a non-finite value to an integer");
  return mpfr_get_si(v_, MPFR_RNDU);
}

long HiFloat::to_long_floor() const {
  if (!is_finite()) throw DomainError("cannot convert a non-finite value to an integer");
  return mpfr_get_si(v_, MPFR_RNDD);
}

std::string HiFloat::to_string(int significant) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", significant - 1, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string HiFloat::to_display(int significant) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%#.*Rg", significant, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

HiFloat HiFloat::operator-() const {
  HiFloat r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

HiFloat& HiFloat::operator+=(const HiFloat& o) { return *this = *this + o; }
HiFloat& HiFloat::operator-=(const HiFloat& o) { return *this = *this - o; }
HiFloat& HiFloat::operator*=(const HiFloat& o) { return *this = *this * o; }
HiFloat& HiFloat::operator/=(const HiFloat& o) { return *this = *this / o; }

HiFloat operator+(const HiFloat& a, const HiFloat& b) {
  HiFloat r(HiFloat::Uninit{}, std::max(a.precision(), b.precision()));
  const int t = mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
  r.err_ = sum_error(a, b, r.v_) + rounding(t, r.precision());
  return r;
}

HiFloat operator-(const HiFloat& a, const HiFloat& b) {
  HiFloat r(HiFloat::Uninit{}, std::max(a.precision(), b.precision()));
  const int t = mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
  r.err_ = sum_error(a, b, r.v_) + rounding(t, r.precision());
  return r;
}

HiFloat operator*(const HiFloat& a, const HiFloat& b) {
  HiFloat r(HiFloat::Uninit{}, std::max(a.precision(), b.precision()));
  const int t = mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
  r.err_ = a.err_ + b.err_ + rounding(t, r.precision());
  return r;
}

HiFloat operator/(const HiFloat& a, const HiFloat& b) {
  HiFloat r(HiFloat::Uninit{}, std::max(a.precision(), b.precision()));
  const int t = mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
  r.err_ = a.err_ + b.err_ + rounding(t, r.precision());
  return r;
}

bool operator==(const HiFloat& a, const HiFloat& b) noexcept {
  return mpfr_equal_p(a.v_, b.v_) != 0;
}

std::partial_ordering operator<=>(const HiFloat& a, const HiFloat& b) noexcept {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  if (c < 0) return std::partial_ordering::less;
  if (c > 0) return std::partial_ordering::greater;
  return std::partial_ordering::equivalent;
}

HiFloat exp(const HiFloat& x) {
  HiFloat r(HiFloat::Uninit{}, x.precision());
  const int t = mpfr_exp(r.v_, x.v_, MPFR_RNDN);
  r.err_ = (x.err_ == 0.0 ? 0.0 : abs_value(x.v_) * x.err_) + rounding(t, r.precision());
  return r;
}

HiFloat expm1(const HiFloat& x) {
  HiFloat r(HiFloat::Uninit{}, x.precision());
  const int t = mpfr_expm1(r.v_, x.v_, MPFR_RNDN);
  double e = 0.0;
  if (x.err_ != 0.0) {
    // d expm1 = e^x dx; relative to expm1(x) this is |x| e^x / |expm1 x| * ex.
    HiFloat ex(HiFloat::Uninit{}, 53);
    mpfr_exp(ex.v_, x.v_, MPFR_RNDN);
    e = abs_value(x.v_) * abs_ratio(ex.v_, r.v_) * x.err_;
  }
  r.err_ = e + rounding(t, r.precision());
  return r;
}

HiFloat log(const HiFloat& x) {
  HiFloat r(HiFloat::Uninit{}, x.precision());
  const int t = mpfr_log(r.v_, x.v_, MPFR_RNDN);
  double e = 0.0;
  if (x.err_ != 0.0) e = mpfr_zero_p(r.v_) ? kInf : x.err_ / abs_value(r.v_);
  r.err_ = e + rounding(t, r.precision());
  return r;
}

HiFloat log1p(const HiFloat& x) {
  HiFloat r(HiFloat::Uninit{}, x.precision());
  const int t = mpfr_log1p(r.v_, x.v_, MPFR_RNDN);
  double e = 0.0;
  if (x.err_ != 0.0) {
    if (mpfr_zero_p(r.v_)) {
      e = kInf;
    } else {
      // absolute error |x| ex / (1 + x), relative to log1p(x).
      HiFloat onep(HiFloat::Uninit{}, 53);
      mpfr_add_ui(onep.v_, x.v_, 1, MPFR_RNDN);
      e = abs_ratio(x.v_, onep.v_) * x.err_ / abs_value(r.v_);
    }
  }
  r.err_ = e + rounding(t, r.precision());
  return r;
}

HiFloat sqrt(const HiFloat& x) {
  HiFloat r(HiFloat::Uninit{}, x.precision());
  const int t = mpfr_sqrt(r.v_, x.v_, MPFR_RNDN);
  r.err_ = 0.5 * x.err_ + rounding(t, r.precision());
  return r;
}

HiFloat pow(const HiFloat& base, const HiFloat& exponent) {
  HiFloat r(HiFloat::Uninit{}, std::max(base.precision(), exponent.precision()));
  const int t = mpfr_pow(r.v_, base.v_, exponent.v_, MPFR_RNDN);
  double e = abs_value(exponent.v_) * base.err_;
  if (exponent.err_ != 0.0 && !mpfr_zero_p(base.v_)) {
    HiFloat lb(HiFloat::Uninit{}, 53);
    mpfr_log(lb.v_, base.v_, MPFR_RNDN);
    e += abs_value(exponent.v_) * abs_value(lb.v_) * exponent.err_;
  }
  r.err_ = e + rounding(t, r.precision());
  return r;
}

HiFloat abs(const HiFloat& x) {
  HiFloat r(x);
  mpfr_abs(r.v_, r.v_, MPFR_RNDN);
  return r;
}

HiFloat min(const HiFloat& a, const HiFloat& b) { return b < a ? b : a; }
HiFloat max(const HiFloat& a, const HiFloat& b) { return a < b ? b : a; }

}  // namespace subpoisson
