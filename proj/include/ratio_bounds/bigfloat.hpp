// Minimal value-semantic wrapper over an MPFR number.
//
// Every object carries its own precision; binary operations produce the
// larger precision of their operands. There is no global default, so
// different threads may work at different precisions concurrently.
#pragma once

#include <mpfr.h>

#include <compare>
#include <string>
#include <string_view>

namespace ratio_bounds {

/// Bits needed for `digits` decimal digits plus a guard margin.
mpfr_prec_t bits_for_digits(unsigned digits);

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits);
  BigFloat(double value, mpfr_prec_t bits);
  BigFloat(std::string_view decimal, mpfr_prec_t bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits) const;
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  BigFloat& operator+=(const BigFloat& o);
  BigFloat& operator-=(const BigFloat& o);
  BigFloat& operator*=(const BigFloat& o);
  BigFloat& operator/=(const BigFloat& o);
  BigFloat& operator+=(double o);
  BigFloat& operator-=(double o);
  BigFloat& operator*=(double o);
  BigFloat& operator/=(double o);
  BigFloat operator-() const;

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  friend BigFloat operator+(BigFloat a, double b) { return a += b; }
  friend BigFloat operator-(BigFloat a, double b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, double b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, double b) { return a /= b; }
  friend BigFloat operator+(double a, const BigFloat& b) { return b + a; }
  friend BigFloat operator*(double a, const BigFloat& b) { return b * a; }
  friend BigFloat operator-(double a, const BigFloat& b);
  friend BigFloat operator/(double a, const BigFloat& b);

  friend std::partial_ordering operator<=>(const BigFloat& a, const BigFloat& b);
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const BigFloat& a, double b);
  friend bool operator==(const BigFloat& a, double b) { return mpfr_cmp_d(a.v_, b) == 0; }

 private:
  void widen_to(mpfr_prec_t bits);
  mpfr_t v_;
};

BigFloat sqrt(const BigFloat& a);
BigFloat exp(const BigFloat& a);
BigFloat log(const BigFloat& a);
BigFloat cosh(const BigFloat& a);
BigFloat abs(const BigFloat& a);
BigFloat hypot(const BigFloat& a, const BigFloat& b);
BigFloat max(const BigFloat& a, const BigFloat& b);
BigFloat min(const BigFloat& a, const BigFloat& b);

/// |a - b| / |b| (or |a| when b == 0), rounded to double.
double relative_difference(const BigFloat& a, const BigFloat& b);

}  // namespace ratio_bounds
