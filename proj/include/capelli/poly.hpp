#pragma once

#include "capelli/numbers.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace capelli {

/// Dense univariate polynomial over the integers, coefficients ascending by
/// degree. The zero polynomial is the empty coefficient list; the leading
/// coefficient of a nonzero polynomial is never zero.
class IntPoly {
  public:
	IntPoly() = default;
	explicit IntPoly(std::vector<BigInt> ascending_coeffs);

	static IntPoly constant(const BigInt &c);
	/// c * x^degree
	static IntPoly monomial(const BigInt &c, std::size_t degree);
	/// x^n - a
	static IntPoly binomial(unsigned long n, const BigInt &a);

	/// -1 for the zero polynomial.
	int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
	bool is_zero() const { return coeffs_.empty(); }
	bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

	/// Coefficient of x^i, zero beyond the degree.
	const BigInt &coeff(std::size_t i) const;
	const BigInt &leading() const;
	const std::vector<BigInt> &coeffs() const { return coeffs_; }

	/// True when the polynomial is x^n - a for some n >= 1.
	bool is_binomial_form() const;

	IntPoly operator-() const;
	friend IntPoly operator+(const IntPoly &p, const IntPoly &q);
	friend IntPoly operator-(const IntPoly &p, const IntPoly &q);
	bool operator==(const IntPoly &) const = default;

	/// Deterministic order: by degree, then ascending-coefficient lexicographic.
	static bool canonical_less(const IntPoly &p, const IntPoly &q);

  private:
	std::vector<BigInt> coeffs_;
	void trim();
};

/// Exact convolution product.
IntPoly poly_mul(const IntPoly &p, const IntPoly &q);

inline IntPoly operator*(const IntPoly &p, const IntPoly &q) { return poly_mul(p, q); }

/// Quotient q with q*d = p exactly over Z, or absent. Throws
/// std::invalid_argument when d is the zero polynomial.
std::optional<IntPoly> poly_div_exact(const IntPoly &p, const IntPoly &d);

/// Horner evaluation.
BigInt poly_eval(const IntPoly &p, const BigInt &x0);

/// p(x^k), k >= 1.
IntPoly substitute_power(const IntPoly &p, unsigned long k);

/// The n-th cyclotomic polynomial, built by exact division of x^n - 1 by the
/// lower-index cyclotomics. Memoized; safe for concurrent callers.
IntPoly cyclotomic(unsigned long n);

/// The integer polynomial b^(2^r * phi(d)) * Phi_{2^(r+1) d}(x^k / b), the
/// homogenized building block of the x^n + b^m product identity. Requires
/// b != 0 and d odd.
IntPoly scaled_cyclotomic(unsigned long d, const BigInt &b, unsigned long k, unsigned long r);

/// Parses the term grammar `c`, `x`, `c*x`, `x^e`, `c*x^e` joined by +/-.
/// Throws parse_error with the offending position.
IntPoly poly_parse(std::string_view text);

/// Canonical text: descending degree, zero terms omitted, x^1 as x, unit
/// coefficients elided. Round-trips through poly_parse.
std::string poly_format(const IntPoly &p);

} // namespace capelli
