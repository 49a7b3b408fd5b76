#pragma once

#include "capelli/arith.hpp"
#include "capelli/numbers.hpp"
#include "capelli/poly.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace capelli {

/// The binomial x^n - a with a rational, plus its integer-normalized constant
/// A = c^(n-1) * b for a = b/c in lowest terms.
struct Binomial {
	unsigned long n = 2;
	Rational a;
	std::optional<BigInt> normalized;
};

// -- Witnesses ---------------------------------------------------------------
//
// Reducibility witnesses are constructive: each one pins down an explicit
// factorization route. Irreducibility certificates (Eisenstein, Selmer
// parity) justify the negative verdict when available.

/// a = base^exponent with exponent | n, exponent > 1.
struct PerfectPowerWitness {
	Rational base;
	unsigned long exponent = 2;
	bool operator==(const PerfectPowerWitness &) const = default;
};

/// a = -4 * base^4 with 4 | n; base > 0.
struct SophieGermainWitness {
	Rational base;
	bool operator==(const SophieGermainWitness &) const = default;
};

/// prime | a, prime^2 does not divide a: x^n - a is irreducible.
struct EisensteinWitness {
	BigInt prime;
	bool operator==(const EisensteinWitness &) const = default;
};

/// base(k^2) = 2 (mod 4) for odd k with base irreducible: base(x^2) is
/// irreducible. Here base = x^(n/2) - a.
struct SelmerParityWitness {
	unsigned long k = 1;
	IntPoly base;
	bool operator==(const SelmerParityWitness &) const = default;
};

/// |a| = 1: the polynomial is a product of cyclotomics when it splits.
struct UnitConstantWitness {
	bool operator==(const UnitConstantWitness &) const = default;
};

/// a = 0: x * x^(n-1).
struct ZeroConstantWitness {
	bool operator==(const ZeroConstantWitness &) const = default;
};

using Witness = std::variant<PerfectPowerWitness, SophieGermainWitness, EisensteinWitness,
                             SelmerParityWitness, UnitConstantWitness, ZeroConstantWitness>;

enum class Decision { Reducible, Irreducible };

/// Decision plus every witness that justifies it. Reducible verdicts carry
/// constructive witnesses only; irreducible verdicts may carry an Eisenstein
/// or Selmer certificate.
struct Verdict {
	Decision decision = Decision::Irreducible;
	std::vector<Witness> witnesses;

	bool reducible() const { return decision == Decision::Reducible; }
};

std::string witness_text(const Witness &w, unsigned long n);

// -- Certificates ------------------------------------------------------------

enum class Provenance { GeometricSum, ScaledCyclotomic, SophieGermain, Cyclotomic, OracleRefined };

std::string provenance_name(Provenance p);
std::optional<Provenance> provenance_from_name(std::string_view name);

/// Explicit factorization: the exact product of factors equals target and
/// every factor has degree strictly between 0 and deg(target).
struct Certificate {
	IntPoly target;
	std::vector<IntPoly> factors;
	std::vector<Provenance> provenance; // one tag per factor
};

// -- Operations --------------------------------------------------------------

/// A = c^(n-1) * b for a = b/c in lowest terms: x^n - a is reducible over Q
/// iff y^n - A is reducible over Z.
BigInt reduce_to_integer(unsigned long n, const Rational &a);

/// The reducibility criterion over Z: x^n - a is reducible iff a = b^t for
/// some t | n, t > 1, or 4 | n and a = -4 b^4 (plus the a = 0 and |a| = 1
/// edge families). Collects all valid witnesses; irreducible verdicts attach
/// a certificate when one exists. Requires n >= 2.
Verdict decide(unsigned long n, const BigInt &a, unsigned long trial_bound = kDefaultTrialBound);

/// The criterion over Q, decided directly on numerator/denominator without
/// going through reduce_to_integer. Requires n >= 2 and a canonical.
Verdict decide_rational(unsigned long n, const Rational &a,
                        unsigned long trial_bound = kDefaultTrialBound);

/// A prime p with p | a and p^2 not dividing a, if one exists. |a| >= 2.
std::optional<BigInt> eisenstein_witness(unsigned long n, const BigInt &a,
                                         unsigned long trial_bound = kDefaultTrialBound);

/// First odd k <= kSelmerSearchMax with g(k^2) = 2 (mod 4); certifies that
/// g(x^2) is irreducible when g is. Absent is inconclusive, never a
/// reducibility claim.
std::optional<unsigned long> selmer_parity_certificate(const IntPoly &g);

constexpr unsigned long kSelmerSearchMax = 99;

/// True iff g(x^2) = (-1)^n g1(x) g1(-x) exactly (n = deg g); also checks the
/// equivalent even/odd-part difference-of-squares form. Throws
/// std::invalid_argument on degree mismatch.
bool selmer_split_check(const IntPoly &g, const IntPoly &g1);

/// One verified splitting step for x^n - a driven by the first constructive
/// witness of the verdict. Throws std::invalid_argument on an irreducible
/// verdict; throws std::logic_error if the product check ever fails.
Certificate factor_once(unsigned long n, const BigInt &a, const Verdict &verdict);

/// The full scaled-cyclotomic factorization of x^n + b^m for m | n,
/// m = 2^r * m1 with m1 odd. Requires m1 > 1; m1 = 1 is the exceptional
/// class x^n + b^(2^r) and raises std::invalid_argument.
Certificate factor_plus_bm(unsigned long n, const BigInt &b, unsigned long m);

/// Recursive convenience: factor_once, then keep splitting factors that are
/// themselves binomials. Non-binomial cofactors are left untouched.
Certificate factor_deep(unsigned long n, const BigInt &a, const Verdict &verdict);

/// Pure re-computation: multiplies the factors back and checks the degree
/// constraints. Trusts nothing; returns false on any violation.
bool verify_certificate(const Certificate &cert);

// -- Serialization -----------------------------------------------------------

/// Certificate plus the instance it factors, as written by the CLI. All
/// integer values serialize as decimal strings.
struct CertificateDocument {
	Binomial instance;
	Certificate certificate;
	std::vector<Witness> witnesses;
};

std::string certificate_document_to_json(const CertificateDocument &doc, int indent = 2);

/// Throws parse_error on malformed documents.
CertificateDocument certificate_document_from_json(const std::string &text);

std::string verdict_to_json(unsigned long n, const Rational &a, const Verdict &v, int indent = 2);

} // namespace capelli
