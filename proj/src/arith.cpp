#include "capelli/arith.hpp"

#include "capelli/errors.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace capelli {

std::vector<unsigned long> divisors_of(unsigned long n)
{
	if (n == 0)
		throw std::invalid_argument("divisors_of: n >= 1 required");
	std::vector<unsigned long> out;
	for (unsigned long i = 1; i * i <= n; ++i) {
		if (n % i != 0)
			continue;
		out.push_back(i);
		if (i != n / i)
			out.push_back(n / i);
	}
	std::sort(out.begin(), out.end());
	return out;
}

unsigned long two_adic_valuation(unsigned long n)
{
	if (n == 0)
		throw std::invalid_argument("two_adic_valuation: n >= 1 required");
	unsigned long v = 0;
	while ((n & 1) == 0) {
		n >>= 1;
		++v;
	}
	return v;
}

BigInt gcd_many(const std::vector<BigInt> &values)
{
	if (values.empty())
		throw std::invalid_argument("gcd_many: nonempty list required");
	BigInt g = 0;
	for (const BigInt &v : values) {
		mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
		if (g == 1)
			break;
	}
	return g;
}

bool PrimeFactorization::reconstructs() const
{
	BigInt prod = sign;
	for (const auto &[p, e] : factors)
		prod *= big_pow(p, e);
	return prod == value;
}

unsigned long PrimeFactorization::exponent_gcd() const
{
	unsigned long g = 0;
	for (const auto &[p, e] : factors)
		g = std::gcd(g, e);
	return g;
}

namespace {

// Smallest witness set proven deterministic below kCertificationLimit
// (Sorenson & Webster).
constexpr unsigned long kMrWitnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};

const BigInt &certification_limit()
{
	static const BigInt limit("3317044064679887385961981");
	return limit;
}

bool miller_rabin_witness(const BigInt &n, const BigInt &n_minus_1, const BigInt &odd_part,
                          unsigned long twos, unsigned long base)
{
	BigInt x;
	BigInt b(base);
	mpz_powm(x.get_mpz_t(), b.get_mpz_t(), odd_part.get_mpz_t(), n.get_mpz_t());
	if (x == 1 || x == n_minus_1)
		return true;
	for (unsigned long i = 1; i < twos; ++i) {
		x = (x * x) % n;
		if (x == n_minus_1)
			return true;
	}
	return false;
}

} // namespace

bool certified_prime(const BigInt &n)
{
	if (n < 2)
		return false;
	for (unsigned long p : kMrWitnesses) {
		if (n == p)
			return true;
		if (mpz_divisible_ui_p(n.get_mpz_t(), p))
			return false;
	}
	if (n >= certification_limit())
		throw factor_bound_error("primality certification supports |n| < 3.317e24, got " +
		                         to_string(n));
	BigInt n_minus_1 = n - 1;
	unsigned long twos = mpz_scan1(n_minus_1.get_mpz_t(), 0);
	BigInt odd = n_minus_1 >> twos;
	for (unsigned long base : kMrWitnesses)
		if (!miller_rabin_witness(n, n_minus_1, odd, twos, base))
			return false;
	return true;
}

PrimeFactorization factorize(const BigInt &n, unsigned long trial_bound)
{
	if (big_abs(n) < 2)
		throw std::invalid_argument("factorize: |n| >= 2 required");
	if (trial_bound < 2)
		throw std::invalid_argument("factorize: trial bound >= 2 required");

	PrimeFactorization out;
	out.value = n;
	out.sign = (n < 0) ? -1 : 1;
	BigInt rem = big_abs(n);

	auto strip = [&](unsigned long p) {
		unsigned long e = 0;
		while (mpz_divisible_ui_p(rem.get_mpz_t(), p)) {
			mpz_divexact_ui(rem.get_mpz_t(), rem.get_mpz_t(), p);
			++e;
		}
		if (e > 0)
			out.factors.emplace_back(BigInt(p), e);
	};

	strip(2);
	strip(3);
	unsigned long p = 5;
	unsigned long step = 2; // 6k +/- 1 wheel
	while (p <= trial_bound) {
		BigInt pp = BigInt(p) * p;
		if (pp > rem)
			break;
		strip(p);
		p += step;
		step = 6 - step;
	}

	if (rem > 1) {
		const bool below_square = BigInt(p) * p > rem;
		if (!below_square && !certified_prime(rem))
			throw factor_bound_error("factorization exceeds bound: composite cofactor " +
			                         to_string(rem) + " beyond trial bound " +
			                         std::to_string(trial_bound));
		out.factors.emplace_back(rem, 1);
	}
	return out;
}

std::optional<BigInt> nth_root_exact(const BigInt &a, unsigned long t)
{
	if (t == 0)
		throw std::invalid_argument("nth_root_exact: t >= 1 required");
	if (t == 1)
		return a;
	if (a < 0 && t % 2 == 0)
		return std::nullopt;
	BigInt r;
	mpz_root(r.get_mpz_t(), a.get_mpz_t(), t);
	// round trip by exact multiplication, never trust the truncation flag
	if (big_pow(r, t) == a)
		return r;
	return std::nullopt;
}

PerfectPower perfect_power_decompose(const BigInt &a)
{
	if (big_abs(a) < 2)
		throw std::invalid_argument("perfect_power_decompose: |a| >= 2 required");
	for (unsigned long e = bit_length(big_abs(a)); e >= 2; --e) {
		if (a < 0 && e % 2 == 0)
			continue;
		if (auto b = nth_root_exact(a, e))
			return {*b, e};
	}
	return {a, 1};
}

std::optional<std::pair<BigInt, unsigned long>> property_p_decompose(const BigInt &a, unsigned long n)
{
	if (n < 2)
		throw std::invalid_argument("property_p_decompose: n >= 2 required");
	PerfectPower pp = perfect_power_decompose(a);
	unsigned long m = std::gcd(n, pp.exponent);
	if (m < 2)
		return std::nullopt;
	auto b = nth_root_exact(a, m);
	if (!b)
		throw std::logic_error("property_p_decompose: root extraction failed for admissible m");
	return std::make_pair(*b, m);
}

bool has_property_p(const BigInt &b, unsigned long n, unsigned long trial_bound)
{
	if (b < 2)
		throw std::invalid_argument("has_property_p: b >= 2 required");
	PrimeFactorization f = factorize(b, trial_bound);
	if (f.omega() == 1 && f.factors.front().second == 1)
		return true; // prime
	return f.omega() >= 2 && std::gcd(f.exponent_gcd(), n) == 1;
}

} // namespace capelli
