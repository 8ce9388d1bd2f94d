#include "ratio_bounds/bigfloat.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ratio_bounds/errors.hpp"

namespace ratio_bounds {

mpfr_prec_t bits_for_digits(unsigned digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.321928094887362)) + 16;
}

BigFloat::BigFloat(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(double value, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, value, MPFR_RNDN);
}

BigFloat::BigFloat(std::string_view decimal, mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  const std::string s(decimal);
  if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
    mpfr_clear(v_);
    throw DomainError("BigFloat: cannot parse '" + s + "'");
  }
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(v_, MPFR_PREC_MIN);
  mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

void BigFloat::widen_to(mpfr_prec_t bits) {
  if (bits > precision()) mpfr_prec_round(v_, bits, MPFR_RNDN);
}

std::string BigFloat::to_string(int digits) const {
  std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return std::string(buf.data());
}

BigFloat& BigFloat::operator+=(const BigFloat& o) {
  widen_to(o.precision());
  mpfr_add(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(const BigFloat& o) {
  widen_to(o.precision());
  mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(const BigFloat& o) {
  widen_to(o.precision());
  mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(const BigFloat& o) {
  widen_to(o.precision());
  mpfr_div(v_, v_, o.v_, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator+=(double o) {
  mpfr_add_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator-=(double o) {
  mpfr_sub_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator*=(double o) {
  mpfr_mul_d(v_, v_, o, MPFR_RNDN);
  return *this;
}
BigFloat& BigFloat::operator/=(double o) {
  mpfr_div_d(v_, v_, o, MPFR_RNDN);
  return *this;
}

BigFloat BigFloat::operator-() const {
  BigFloat r(*this);
  mpfr_neg(r.v_, r.v_, MPFR_RNDN);
  return r;
}

BigFloat operator-(double a, const BigFloat& b) {
  BigFloat r(b.precision());
  mpfr_d_sub(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

BigFloat operator/(double a, const BigFloat& b) {
  BigFloat r(b.precision());
  mpfr_d_div(r.v_, a, b.v_, MPFR_RNDN);
  return r;
}

std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b) {
  if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(a.v_, b.v_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const BigFloat& a, double b) {
  if (mpfr_nan_p(a.v_) || std::isnan(b)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_d(a.v_, b);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

namespace {

template <class F>
BigFloat unary(const BigFloat& a, F f) {
  BigFloat r(a.precision());
  f(r.get(), a.get(), MPFR_RNDN);
  return r;
}

}  // namespace

BigFloat sqrt(const BigFloat& a) { return unary(a, mpfr_sqrt); }
BigFloat exp(const BigFloat& a) { return unary(a, mpfr_exp); }
BigFloat log(const BigFloat& a) { return unary(a, mpfr_log); }
BigFloat cosh(const BigFloat& a) { return unary(a, mpfr_cosh); }
BigFloat abs(const BigFloat& a) { return unary(a, mpfr_abs); }

BigFloat hypot(const BigFloat& a, const BigFloat& b) {
  BigFloat r(std::max(a.precision(), b.precision()));
  mpfr_hypot(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

BigFloat max(const BigFloat& a, const BigFloat& b) { return a < b ? b : a; }
BigFloat min(const BigFloat& a, const BigFloat& b) { return b < a ? b : a; }

double relative_difference(const BigFloat& a, const BigFloat& b) {
  BigFloat d = abs(a - b);
  if (!b.is_zero()) d /= abs(b);
  return d.to_double();
}

}  // namespace ratio_bounds
