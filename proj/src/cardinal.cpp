#include "asymtree/cardinal.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>

#include "asymtree/error.hpp"

namespace asymtree {

namespace {

// Finite results beyond this many bits are refused rather than computed.
constexpr unsigned long kMaxFiniteBits = 1ul << 26;

bool is_decimal(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

Cardinal max_of(const Cardinal& a, const Cardinal& b) { return a < b ? b : a; }

}  // namespace

Cardinal::Cardinal(Natural n) : finite_(std::move(n)) {
  if (finite_ < 0) throw InputError("cardinal cannot be negative");
}

Cardinal Cardinal::beth(unsigned k) {
  Cardinal c;
  c.infinite_ = true;
  c.beth_ = k;
  return c;
}

Cardinal Cardinal::parse(std::string_view text) {
  if (text == "w") return aleph0();
  if (text.substr(0, 5) == "beth_" && is_decimal(text.substr(5))) {
    unsigned k = 0;
    auto digits = text.substr(5);
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) {
      throw InputError("beth index out of range: " + std::string(text));
    }
    return beth(k);
  }
  if (is_decimal(text)) return Cardinal(Natural(std::string(text)));
  throw InputError("not a cardinal: '" + std::string(text) + "'");
}

std::string Cardinal::str() const {
  if (infinite_) return "beth_" + std::to_string(beth_);
  return finite_.get_str();
}

bool operator==(const Cardinal& a, const Cardinal& b) {
  if (a.infinite_ != b.infinite_) return false;
  return a.infinite_ ? a.beth_ == b.beth_ : a.finite_ == b.finite_;
}

std::strong_ordering operator<=>(const Cardinal& a, const Cardinal& b) {
  if (a.infinite_ != b.infinite_) return a.infinite_ ? std::strong_ordering::greater : std::strong_ordering::less;
  if (a.infinite_) return a.beth_ <=> b.beth_;
  int c = cmp(a.finite_, b.finite_);
  return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const Cardinal& c) { return os << c.str(); }

Cardinal operator+(const Cardinal& a, const Cardinal& b) {
  if (a.is_finite() && b.is_finite()) return Cardinal(Natural(a.value() + b.value()));
  return max_of(a, b);
}

Cardinal operator*(const Cardinal& a, const Cardinal& b) {
  if (a.is_zero() || b.is_zero()) return Cardinal(0);
  if (a.is_finite() && b.is_finite()) return Cardinal(Natural(a.value() * b.value()));
  return max_of(a, b);
}

Cardinal sum_family(std::span<const Term> terms) {
  Cardinal total(0);
  for (const auto& t : terms) total = total + t.value * t.multiplicity;
  return total;
}

Natural checked_pow(const Natural& base, const Natural& exponent) {
  if (exponent == 0 || base == 1) return 1;
  if (base == 0) return 0;
  if (!exponent.fits_ulong_p()) throw UnsupportedFragment("finite power too large to materialize");
  unsigned long e = exponent.get_ui();
  unsigned long bits = mpz_sizeinbase(base.get_mpz_t(), 2);
  if (bits > 1 && e > kMaxFiniteBits / (bits - 1)) {
    throw UnsupportedFragment("finite power too large to materialize");
  }
  Natural r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Cardinal two_pow(const Cardinal& c) {
  if (c.is_infinite()) return Cardinal::beth(c.beth_index() + 1);
  return Cardinal(checked_pow(2, c.value()));
}

Cardinal pow(const Cardinal& base, const Cardinal& exponent) {
  if (exponent.is_zero()) return Cardinal(1);
  if (base.is_zero()) return Cardinal(0);
  if (base.is_one()) return Cardinal(1);
  if (base.is_finite() && exponent.is_finite()) return Cardinal(checked_pow(base.value(), exponent.value()));
  if (exponent.is_finite()) return base;                                      // kappa^n = kappa
  if (base.is_finite()) return Cardinal::beth(exponent.beth_index() + 1);     // n^lambda = 2^lambda
  // (2^kappa)^lambda = 2^{kappa*lambda}, and beth_i >= aleph_0.
  return Cardinal::beth(std::max(base.beth_index(), exponent.beth_index() + 1));
}

Cardinal binom(const Cardinal& a, const Cardinal& t) {
  if (t > a) return Cardinal(0);
  if (a.is_infinite()) return pow(a, t);
  Natural k = t.value();
  Natural other = a.value() - k;
  if (other < k) k = other;
  if (!k.fits_ulong_p()) throw UnsupportedFragment("binomial coefficient too large to materialize");
  Natural r;
  mpz_bin_ui(r.get_mpz_t(), a.value().get_mpz_t(), k.get_ui());
  return Cardinal(std::move(r));
}

Cardinal product_family(std::span<const Factor> factors) {
  Cardinal result(1);
  for (const auto& f : factors) {
    if (f.exponent.is_zero() || f.value.is_one()) continue;
    if (f.value.is_zero()) return Cardinal(0);
    result = result * pow(f.value, f.exponent);
  }
  return result;
}

}  // namespace asymtree
