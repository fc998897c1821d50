#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace asymtree {

using Natural = mpz_class;

// A cardinal in the closed fragment {finite naturals} u {beth_k : k >= 0}.
// beth_0 is aleph_0 and beth_{k+1} = 2^{beth_k}. Every cardinal that the
// infinite-tree evaluation produces is built from aleph_0 by sums, products
// and powers of two, so it stays inside this fragment and all comparisons are
// decidable without extra set-theoretic assumptions.
class Cardinal {
 public:
  Cardinal() = default;
  Cardinal(unsigned long n) : finite_(n) {}  // NOLINT: implicit on purpose
  explicit Cardinal(Natural n);

  static Cardinal finite(Natural n) { return Cardinal(std::move(n)); }
  static Cardinal beth(unsigned k);
  static Cardinal aleph0() { return beth(0); }

  // Accepts decimal, `w` (alias for beth_0) and `beth_<k>`.
  static Cardinal parse(std::string_view text);

  bool is_finite() const { return !infinite_; }
  bool is_infinite() const { return infinite_; }
  bool is_zero() const { return !infinite_ && finite_ == 0; }
  bool is_one() const { return !infinite_ && finite_ == 1; }

  // Only meaningful for finite values.
  const Natural& value() const { return finite_; }
  // Only meaningful for infinite values.
  unsigned beth_index() const { return beth_; }

  std::string str() const;

  friend bool operator==(const Cardinal& a, const Cardinal& b);
  friend std::strong_ordering operator<=>(const Cardinal& a, const Cardinal& b);

 private:
  bool infinite_ = false;
  unsigned beth_ = 0;
  Natural finite_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Cardinal& c);

Cardinal operator+(const Cardinal& a, const Cardinal& b);
Cardinal operator*(const Cardinal& a, const Cardinal& b);

struct Term {
  Cardinal value;
  Cardinal multiplicity;
};

struct Factor {
  Cardinal value;
  Cardinal exponent;
};

// sum over i of value_i * multiplicity_i.
Cardinal sum_family(std::span<const Term> terms);

// product over i of value_i ^ exponent_i. Throws UnsupportedFragment only
// when a finite result is too large to materialize.
Cardinal product_family(std::span<const Factor> factors);

Cardinal two_pow(const Cardinal& c);
Cardinal pow(const Cardinal& base, const Cardinal& exponent);

// Usual binomial for finite arguments. For infinite `a`: a^t when t <= a,
// 0 when t > a.
Cardinal binom(const Cardinal& a, const Cardinal& t);

// Exact finite power with a guard on the result size.
Natural checked_pow(const Natural& base, const Natural& exponent);

}  // namespace asymtree
