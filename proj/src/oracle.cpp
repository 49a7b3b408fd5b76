#include "capelli/oracle.hpp"

#include "capelli/errors.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace capelli {

namespace {

// Minimal RAII value type over mpfr_t. All arithmetic rounds to nearest at
// the precision fixed at construction.
class Real {
  public:
	explicit Real(mpfr_prec_t prec = 128)
	{
		mpfr_init2(v_, prec);
		mpfr_set_zero(v_, 1);
	}
	Real(const Real &o)
	{
		mpfr_init2(v_, mpfr_get_prec(o.v_));
		mpfr_set(v_, o.v_, MPFR_RNDN);
	}
	Real &operator=(const Real &o)
	{
		if (this != &o) {
			mpfr_set_prec(v_, mpfr_get_prec(o.v_));
			mpfr_set(v_, o.v_, MPFR_RNDN);
		}
		return *this;
	}
	Real(Real &&o) noexcept
	{
		mpfr_init2(v_, mpfr_get_prec(o.v_));
		mpfr_swap(v_, o.v_);
	}
	Real &operator=(Real &&o) noexcept
	{
		mpfr_swap(v_, o.v_);
		return *this;
	}
	~Real() { mpfr_clear(v_); }

	mpfr_ptr get() { return v_; }
	mpfr_srcptr get() const { return v_; }
	double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  private:
	mpfr_t v_;
};

Real real_from(const BigInt &z, mpfr_prec_t prec)
{
	Real r(prec);
	mpfr_set_z(r.get(), z.get_mpz_t(), MPFR_RNDN);
	return r;
}

void fma_add(Real &acc, const Real &x, const Real &y)
{
	mpfr_fma(acc.get(), x.get(), y.get(), acc.get(), MPFR_RNDN);
}

// One conjugation orbit of roots: a single real root (x - root) or a
// conjugate pair (x^2 + beta x + gamma) with beta = -2 Re z, gamma = |z|^2.
struct Orbit {
	bool is_real = false;
	Real root, beta, gamma;

	unsigned long degree() const { return is_real ? 1 : 2; }
};

// multiply acc (dense ascending, monic) by the orbit's linear or quadratic
void multiply_by_orbit(std::vector<Real> &acc, const Orbit &u, mpfr_prec_t prec)
{
	std::vector<Real> next(acc.size() + u.degree(), Real(prec));
	if (u.is_real) {
		Real neg_root(prec);
		mpfr_neg(neg_root.get(), u.root.get(), MPFR_RNDN);
		for (std::size_t i = 0; i < acc.size(); ++i) {
			mpfr_add(next[i + 1].get(), next[i + 1].get(), acc[i].get(), MPFR_RNDN);
			fma_add(next[i], acc[i], neg_root);
		}
	} else {
		for (std::size_t i = 0; i < acc.size(); ++i) {
			mpfr_add(next[i + 2].get(), next[i + 2].get(), acc[i].get(), MPFR_RNDN);
			fma_add(next[i + 1], acc[i], u.beta);
			fma_add(next[i], acc[i], u.gamma);
		}
	}
	acc = std::move(next);
}

struct Engine {
	unsigned long n = 0;
	BigInt a;
	mpfr_prec_t prec = 128;
	std::vector<Orbit> orbits;
	std::vector<std::complex<double>> display_roots;

	bool build_and_validate();
};

// Roots of x^n = a: modulus |a|^(1/n); angles 2*pi*j/n for a > 0 and
// (2j+1)*pi/n for a < 0. Orbits are emitted in ascending representative
// angle, which fixes the enumeration order everywhere downstream.
bool Engine::build_and_validate()
{
	orbits.clear();
	display_roots.clear();

	Real modulus(prec);
	{
		Real abs_a = real_from(big_abs(a), prec);
		mpfr_rootn_ui(modulus.get(), abs_a.get(), n, MPFR_RNDN);
	}
	Real pi(prec);
	mpfr_const_pi(pi.get(), MPFR_RNDN);

	const bool positive = a > 0;
	auto angle_of = [&](unsigned long j) {
		// (2j [+1]) * pi / n
		Real th(prec);
		mpfr_mul_ui(th.get(), pi.get(), positive ? 2 * j : 2 * j + 1, MPFR_RNDN);
		mpfr_div_ui(th.get(), th.get(), n, MPFR_RNDN);
		return th;
	};
	auto push_real_root = [&](bool negative) {
		Orbit u;
		u.is_real = true;
		u.root = modulus;
		if (negative)
			mpfr_neg(u.root.get(), u.root.get(), MPFR_RNDN);
		orbits.push_back(std::move(u));
	};
	auto push_pair = [&](unsigned long j) {
		Real th = angle_of(j);
		Real c(prec), s(prec);
		mpfr_sin_cos(s.get(), c.get(), th.get(), MPFR_RNDN);
		Orbit u;
		u.is_real = false;
		u.beta = Real(prec);
		mpfr_mul(u.beta.get(), modulus.get(), c.get(), MPFR_RNDN);
		mpfr_mul_si(u.beta.get(), u.beta.get(), -2, MPFR_RNDN);
		u.gamma = Real(prec);
		mpfr_sqr(u.gamma.get(), modulus.get(), MPFR_RNDN);
		const double re = modulus.to_double() * c.to_double();
		const double im = modulus.to_double() * s.to_double();
		display_roots.emplace_back(re, im);
		display_roots.emplace_back(re, -im);
		orbits.push_back(std::move(u));
	};

	if (positive) {
		push_real_root(false);
		display_roots.emplace_back(modulus.to_double(), 0.0);
		for (unsigned long j = 1; 2 * j < n; ++j)
			push_pair(j);
		if (n % 2 == 0) {
			push_real_root(true);
			display_roots.emplace_back(-modulus.to_double(), 0.0);
		}
	} else {
		for (unsigned long j = 0; 2 * j + 1 < n; ++j)
			push_pair(j);
		if (n % 2 == 1) {
			push_real_root(true);
			display_roots.emplace_back(-modulus.to_double(), 0.0);
		}
	}

	// the full product must reconstruct x^n - a within 2^(-prec/2) per coefficient
	std::vector<Real> product{Real(prec)};
	mpfr_set_ui(product[0].get(), 1, MPFR_RNDN);
	for (const Orbit &u : orbits)
		multiply_by_orbit(product, u, prec);
	if (product.size() != n + 1)
		return false;

	Real eps(prec), diff(prec);
	mpfr_set_ui_2exp(eps.get(), 1, -(prec / 2), MPFR_RNDN);
	IntPoly target = IntPoly::binomial(n, a);
	for (std::size_t i = 0; i <= n; ++i) {
		Real expect = real_from(target.coeff(i), prec);
		mpfr_sub(diff.get(), product[i].get(), expect.get(), MPFR_RNDN);
		mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
		if (mpfr_cmp(diff.get(), eps.get()) > 0)
			return false;
	}
	return true;
}

// Rounds a monic approximate polynomial to integers. Fails (returns nullopt)
// when any coefficient sits farther than 0.25 from an integer.
std::optional<IntPoly> round_candidate(const std::vector<Real> &coeffs, mpfr_prec_t prec)
{
	std::vector<BigInt> out(coeffs.size());
	Real diff(prec);
	for (std::size_t i = 0; i < coeffs.size(); ++i) {
		BigInt z;
		mpfr_get_z(z.get_mpz_t(), coeffs[i].get(), MPFR_RNDN);
		mpfr_sub_z(diff.get(), coeffs[i].get(), z.get_mpz_t(), MPFR_RNDN);
		mpfr_abs(diff.get(), diff.get(), MPFR_RNDN);
		if (mpfr_cmp_d(diff.get(), 0.25) > 0)
			return std::nullopt;
		out[i] = std::move(z);
	}
	return IntPoly(std::move(out));
}

struct SubsetSearch {
	SubsetSearch(const Engine &engine, const std::vector<std::size_t> &orbit_indices,
	             const IntPoly &poly)
	    : eng(engine), available(orbit_indices), target(poly)
	{}

	const Engine &eng;
	const std::vector<std::size_t> &available; // orbit indices, ascending
	const IntPoly &target;
	bool near_miss = false;

	std::vector<std::size_t> chosen;
	std::optional<IntPoly> found;
	std::vector<std::size_t> found_subset;

	// Depth-first over orbit indices in ascending order: subsets of equal
	// degree are visited lexicographically, so the first hit is canonical.
	bool visit(std::size_t from, unsigned long degree_left, const std::vector<Real> &prod)
	{
		if (degree_left == 0) {
			auto cand = round_candidate(prod, eng.prec);
			if (!cand)
				return false;
			if (poly_div_exact(target, *cand)) {
				found = std::move(*cand);
				found_subset = chosen;
				return true;
			}
			near_miss = true;
			return false;
		}
		for (std::size_t idx = from; idx < available.size(); ++idx) {
			const Orbit &u = eng.orbits[available[idx]];
			if (u.degree() > degree_left)
				continue;
			std::vector<Real> next = prod;
			multiply_by_orbit(next, u, eng.prec);
			chosen.push_back(available[idx]);
			if (visit(idx + 1, degree_left - u.degree(), next))
				return true;
			chosen.pop_back();
		}
		return false;
	}

	bool run()
	{
		const unsigned long total = static_cast<unsigned long>(target.degree());
		std::vector<Real> one{Real(eng.prec)};
		mpfr_set_ui(one[0].get(), 1, MPFR_RNDN);
		for (unsigned long size = 1; 2 * size <= total; ++size)
			if (visit(0, size, one))
				return true;
		return false;
	}
};

mpfr_prec_t starting_precision(unsigned long n, const BigInt &a)
{
	const unsigned long bits = bit_length(big_abs(a));
	const unsigned long guess = 4 * n * (1 + bits / n);
	return static_cast<mpfr_prec_t>(std::max<unsigned long>(128, guess));
}

void check_oracle_domain(unsigned long n, const BigInt &a)
{
	if (n < 2 || n > kOracleMaxDegree)
		throw std::invalid_argument("oracle: 2 <= n <= " + std::to_string(kOracleMaxDegree) +
		                            " required");
	if (a == 0)
		throw std::invalid_argument("oracle: a != 0 required");
}

constexpr int kMaxEscalations = 3;

Engine build_engine(unsigned long n, const BigInt &a, int escalation)
{
	Engine eng;
	eng.n = n;
	eng.a = a;
	eng.prec = starting_precision(n, a) << escalation;
	if (!eng.build_and_validate()) {
		if (escalation >= kMaxEscalations)
			throw std::logic_error("oracle: root set fails to reconstruct the target after "
			                       "precision escalation");
		return build_engine(n, a, escalation + 1);
	}
	return eng;
}

} // namespace

RootSet compute_root_set(unsigned long n, const BigInt &a, long precision_bits)
{
	check_oracle_domain(n, a);
	Engine eng;
	if (precision_bits > 0) {
		eng.n = n;
		eng.a = a;
		eng.prec = static_cast<mpfr_prec_t>(precision_bits);
		if (!eng.build_and_validate())
			eng = build_engine(n, a, 0);
	} else {
		eng = build_engine(n, a, 0);
	}
	RootSet rs;
	rs.n = n;
	rs.a = a;
	rs.precision_bits = static_cast<long>(eng.prec);
	rs.roots = eng.display_roots;
	std::sort(rs.roots.begin(), rs.roots.end(), [](const auto &x, const auto &y) {
		return std::atan2(x.imag(), x.real()) < std::atan2(y.imag(), y.real());
	});
	rs.validated = true;
	return rs;
}

OracleResult oracle_decide(unsigned long n, const BigInt &a)
{
	check_oracle_domain(n, a);
	const IntPoly target = IntPoly::binomial(n, a);
	for (int escalation = 0;; ++escalation) {
		Engine eng = build_engine(n, a, escalation);
		std::vector<std::size_t> all(eng.orbits.size());
		for (std::size_t i = 0; i < all.size(); ++i)
			all[i] = i;
		SubsetSearch search{eng, all, target};
		if (search.run())
			return {Decision::Reducible, std::move(search.found)};
		if (!search.near_miss || escalation >= kMaxEscalations)
			return {Decision::Irreducible, std::nullopt};
		// a candidate rounded cleanly but failed exact division: retry wider
	}
}

Certificate oracle_factor(unsigned long n, const BigInt &a)
{
	check_oracle_domain(n, a);
	const IntPoly target = IntPoly::binomial(n, a);

	for (int escalation = 0;; ++escalation) {
		Engine eng = build_engine(n, a, escalation);
		std::vector<std::size_t> all(eng.orbits.size());
		for (std::size_t i = 0; i < all.size(); ++i)
			all[i] = i;

		std::vector<std::pair<std::vector<std::size_t>, IntPoly>> parts{{all, target}};
		std::vector<IntPoly> leaves;
		bool restart = false;

		while (!parts.empty() && !restart) {
			auto [subset, poly] = std::move(parts.back());
			parts.pop_back();
			SubsetSearch search{eng, subset, poly};
			if (search.run()) {
				auto cofactor = poly_div_exact(poly, *search.found);
				if (!cofactor)
					throw std::logic_error("oracle_factor: confirmed factor stopped dividing");
				std::vector<std::size_t> rest;
				std::set_difference(subset.begin(), subset.end(), search.found_subset.begin(),
				                    search.found_subset.end(), std::back_inserter(rest));
				parts.emplace_back(std::move(search.found_subset), std::move(*search.found));
				parts.emplace_back(std::move(rest), std::move(*cofactor));
			} else if (search.near_miss && escalation < kMaxEscalations) {
				restart = true;
			} else {
				leaves.push_back(std::move(poly));
			}
		}
		if (restart)
			continue;

		std::sort(leaves.begin(), leaves.end(), IntPoly::canonical_less);
		Certificate cert;
		cert.target = target;
		cert.factors = std::move(leaves);
		cert.provenance.assign(cert.factors.size(), Provenance::OracleRefined);
		if (cert.factors.size() >= 2 && !verify_certificate(cert))
			throw std::logic_error("oracle_factor: factorization failed exact verification");
		return cert;
	}
}

} // namespace capelli
