#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <string>
#include <string_view>

namespace grpd {

/// An element of the Gaussian rationals Q(i): re + im*i with arbitrary
/// precision rational parts, always kept in lowest terms.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  Scalar(long num, long den);
  Scalar(mpq_class re, mpq_class im = 0);

  static Scalar i() { return Scalar(mpq_class(0), mpq_class(1)); }

  /// Accepts "p", "p/q", "p/q+r/si", "r/si", "i", "-i" with optional signs.
  static Scalar parse(std::string_view text);

  [[nodiscard]] const mpq_class& re() const { return re_; }
  [[nodiscard]] const mpq_class& im() const { return im_; }

  [[nodiscard]] bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  [[nodiscard]] bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  [[nodiscard]] Scalar conj() const { return {re_, -im_}; }
  [[nodiscard]] Scalar inverse() const;

  /// Total bit length of both numerators and denominators; pivot heuristic.
  [[nodiscard]] std::size_t bit_size() const;

  /// Canonical form: "p/q" for real values, "p/q+r/si" otherwise.
  [[nodiscard]] std::string to_string() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return {-a.re_, -a.im_}; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

 private:
  mpq_class re_{0};
  mpq_class im_{0};
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace grpd
