#include "capelli/binomial.hpp"

#include "capelli/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace capelli {

using nlohmann::json;

BigInt reduce_to_integer(unsigned long n, const Rational &a)
{
	Rational r = a;
	r.canonicalize();
	return big_pow(r.get_den(), n - 1) * r.get_num();
}

std::string witness_text(const Witness &w, unsigned long n)
{
	std::ostringstream out;
	std::visit(
	    [&](const auto &x) {
		    using T = std::decay_t<decltype(x)>;
		    if constexpr (std::is_same_v<T, PerfectPowerWitness>) {
			    std::string base = to_string(x.base);
			    if (x.base < 0 || x.base.get_den() != 1)
				    base = "(" + base + ")";
			    out << "a = " << base << "^" << x.exponent << ", t=" << x.exponent << " | " << n;
		    } else if constexpr (std::is_same_v<T, SophieGermainWitness>) {
			    std::string base = to_string(x.base);
			    if (x.base.get_den() != 1)
				    base = "(" + base + ")";
			    out << "Sophie-Germain, a = -4*" << base << "^4";
		    } else if constexpr (std::is_same_v<T, EisensteinWitness>) {
			    out << "Eisenstein at p=" << to_string(x.prime);
		    } else if constexpr (std::is_same_v<T, SelmerParityWitness>) {
			    out << "Selmer parity at k=" << x.k << " for " << poly_format(x.base);
		    } else if constexpr (std::is_same_v<T, UnitConstantWitness>) {
			    out << "unit constant, cyclotomic split";
		    } else if constexpr (std::is_same_v<T, ZeroConstantWitness>) {
			    out << "zero constant, x divides";
		    }
	    },
	    w);
	return out.str();
}

std::string provenance_name(Provenance p)
{
	switch (p) {
	case Provenance::GeometricSum: return "geometric-sum";
	case Provenance::ScaledCyclotomic: return "scaled-cyclotomic";
	case Provenance::SophieGermain: return "sophie-germain";
	case Provenance::Cyclotomic: return "cyclotomic";
	case Provenance::OracleRefined: return "oracle-refined";
	}
	throw std::logic_error("provenance_name: unknown tag");
}

std::optional<Provenance> provenance_from_name(std::string_view name)
{
	for (Provenance p : {Provenance::GeometricSum, Provenance::ScaledCyclotomic,
	                     Provenance::SophieGermain, Provenance::Cyclotomic,
	                     Provenance::OracleRefined})
		if (provenance_name(p) == name)
			return p;
	return std::nullopt;
}

namespace {

Verdict reducible_with(std::vector<Witness> witnesses)
{
	return Verdict{Decision::Reducible, std::move(witnesses)};
}

// Certificates of irreducibility: Eisenstein when the constant has a simple
// prime, otherwise the Selmer parity route through x^(n/2) - a.
void attach_irreducibility_certificate(Verdict &v, unsigned long n, const BigInt &a,
                                       unsigned long trial_bound)
{
	if (big_abs(a) >= 2) {
		try {
			if (auto p = eisenstein_witness(n, a, trial_bound)) {
				v.witnesses.push_back(EisensteinWitness{*p});
				return;
			}
		} catch (const factor_bound_error &) {
			return; // decision unaffected, certificate unavailable
		}
	}
	if (n % 2 != 0)
		return;
	unsigned long h = n / 2;
	bool base_irreducible = h == 1 || !decide(h, a, trial_bound).reducible();
	if (!base_irreducible)
		return;
	IntPoly g = IntPoly::binomial(h, a);
	if (auto k = selmer_parity_certificate(g))
		v.witnesses.push_back(SelmerParityWitness{*k, std::move(g)});
}

} // namespace

Verdict decide(unsigned long n, const BigInt &a, unsigned long trial_bound)
{
	if (n < 2)
		throw std::invalid_argument("decide: n >= 2 required");
	if (a == 0)
		return reducible_with({ZeroConstantWitness{}});
	if (a == 1)
		return reducible_with({UnitConstantWitness{}});
	if (a == -1) {
		if (!is_power_of_two(n))
			return reducible_with({UnitConstantWitness{}});
		// x^n + 1 is the 2n-th cyclotomic polynomial
		Verdict v;
		attach_irreducibility_certificate(v, n, a, trial_bound);
		return v;
	}

	std::vector<Witness> witnesses;
	for (unsigned long t : divisors_of(n)) {
		if (t < 2)
			continue;
		if (auto b = nth_root_exact(a, t))
			witnesses.push_back(PerfectPowerWitness{Rational(*b), t});
	}
	if (n % 4 == 0 && a < 0 && mpz_divisible_ui_p(a.get_mpz_t(), 4)) {
		BigInt quarter = -a / 4;
		if (auto b = nth_root_exact(quarter, 4))
			witnesses.push_back(SophieGermainWitness{Rational(big_abs(*b))});
	}
	if (!witnesses.empty())
		return reducible_with(std::move(witnesses));

	Verdict v;
	attach_irreducibility_certificate(v, n, a, trial_bound);
	return v;
}

Verdict decide_rational(unsigned long n, const Rational &a_in, unsigned long trial_bound)
{
	if (n < 2)
		throw std::invalid_argument("decide_rational: n >= 2 required");
	Rational a = a_in;
	a.canonicalize();
	const BigInt num(a.get_num());
	const BigInt den(a.get_den());

	if (num == 0)
		return reducible_with({ZeroConstantWitness{}});
	if (den == 1 && num == 1)
		return reducible_with({UnitConstantWitness{}});
	if (den == 1 && num == -1) {
		if (!is_power_of_two(n))
			return reducible_with({UnitConstantWitness{}});
		Verdict v;
		attach_irreducibility_certificate(v, n, BigInt(-1), trial_bound);
		return v;
	}

	std::vector<Witness> witnesses;
	// p/q in lowest terms is a t-th power in Q iff p and q both are in Z
	for (unsigned long t : divisors_of(n)) {
		if (t < 2)
			continue;
		auto bn = nth_root_exact(num, t);
		if (!bn)
			continue;
		auto bd = nth_root_exact(den, t);
		if (!bd)
			continue;
		Rational base(*bn, *bd);
		base.canonicalize();
		witnesses.push_back(PerfectPowerWitness{base, t});
	}
	if (n % 4 == 0 && a < 0) {
		Rational quarter = -a / 4;
		quarter.canonicalize();
		auto bn = nth_root_exact(quarter.get_num(), 4);
		auto bd = bn ? nth_root_exact(quarter.get_den(), 4) : std::nullopt;
		if (bn && bd) {
			Rational base(big_abs(*bn), *bd);
			base.canonicalize();
			witnesses.push_back(SophieGermainWitness{base});
		}
	}
	if (!witnesses.empty())
		return reducible_with(std::move(witnesses));

	Verdict v;
	// certificates live on the integer-normalized form y^n - c^(n-1) b
	attach_irreducibility_certificate(v, n, reduce_to_integer(n, a), trial_bound);
	return v;
}

std::optional<BigInt> eisenstein_witness(unsigned long n, const BigInt &a,
                                         unsigned long trial_bound)
{
	(void)n; // the criterion constrains only the constant term here
	if (big_abs(a) < 2)
		throw std::invalid_argument("eisenstein_witness: |a| >= 2 required");
	for (const auto &[p, e] : factorize(a, trial_bound).factors)
		if (e == 1)
			return p;
	return std::nullopt;
}

std::optional<unsigned long> selmer_parity_certificate(const IntPoly &g)
{
	for (unsigned long k = 1; k <= kSelmerSearchMax; k += 2) {
		BigInt value = poly_eval(g, BigInt(k) * k);
		BigInt residue;
		mpz_mod_ui(residue.get_mpz_t(), value.get_mpz_t(), 4);
		if (residue == 2)
			return k;
	}
	return std::nullopt;
}

bool selmer_split_check(const IntPoly &g, const IntPoly &g1)
{
	if (g.is_zero() || g1.is_zero() || g.degree() != g1.degree())
		throw std::invalid_argument("selmer_split_check: equal nonzero degrees required");
	const int n = g.degree();
	const bool negate = (n % 2) != 0;

	IntPoly lhs = substitute_power(g, 2);

	std::vector<BigInt> flipped = g1.coeffs();
	for (std::size_t i = 1; i < flipped.size(); i += 2)
		flipped[i] = -flipped[i];
	IntPoly g1_neg(std::move(flipped)); // g1(-x)
	IntPoly rhs = poly_mul(g1, g1_neg);
	if (negate)
		rhs = -rhs;
	const bool product_form = lhs == rhs;

	// difference-of-squares form from the even/odd split of g1
	std::vector<BigInt> even = g1.coeffs(), odd = g1.coeffs();
	for (std::size_t i = 0; i < even.size(); ++i)
		(i % 2 ? even : odd)[i] = 0;
	IntPoly f1(std::move(even)), f2(std::move(odd));
	IntPoly diff = poly_mul(f1, f1) - poly_mul(f2, f2);
	if (negate)
		diff = -diff;
	const bool square_form = lhs == diff;

	return product_form && square_form;
}

namespace {

BigInt integral_base(const Rational &r, const char *who)
{
	if (r.get_den() != 1)
		throw std::invalid_argument(std::string(who) + ": integral witness base required");
	return r.get_num();
}

void append_factor(Certificate &cert, IntPoly f, Provenance tag)
{
	cert.factors.push_back(std::move(f));
	cert.provenance.push_back(tag);
}

void check_product(const Certificate &cert, const char *who)
{
	if (!verify_certificate(cert))
		throw std::logic_error(std::string(who) + ": constructed certificate failed verification");
}

} // namespace

Certificate factor_once(unsigned long n, const BigInt &a, const Verdict &verdict)
{
	if (n < 2)
		throw std::invalid_argument("factor_once: n >= 2 required");
	if (!verdict.reducible() || verdict.witnesses.empty())
		throw std::invalid_argument("factor_once: a reducible verdict with a witness is required");

	Certificate cert;
	cert.target = IntPoly::binomial(n, a);

	const Witness &w = verdict.witnesses.front();
	if (const auto *pp = std::get_if<PerfectPowerWitness>(&w)) {
		const BigInt b = integral_base(pp->base, "factor_once");
		const unsigned long t = pp->exponent;
		if (t < 2 || n % t != 0)
			throw std::invalid_argument("factor_once: witness exponent must divide n");
		const unsigned long s = n / t;
		append_factor(cert, IntPoly::binomial(s, b), Provenance::GeometricSum);
		// cofactor sum_{j<t} b^j x^(s(t-1-j))
		std::vector<BigInt> cof(s * (t - 1) + 1, BigInt(0));
		for (unsigned long j = 0; j < t; ++j)
			cof[s * (t - 1 - j)] = big_pow(b, j);
		append_factor(cert, IntPoly(std::move(cof)), Provenance::GeometricSum);
	} else if (const auto *sg = std::get_if<SophieGermainWitness>(&w)) {
		const BigInt b = integral_base(sg->base, "factor_once");
		if (n % 4 != 0)
			throw std::invalid_argument("factor_once: Sophie-Germain witness requires 4 | n");
		const unsigned long t = n / 2;
		const BigInt two_b2 = 2 * b * b;
		for (int side : {-1, +1}) {
			std::vector<BigInt> f(t + 1, BigInt(0));
			f[0] = two_b2;
			f[t / 2] = side * 2 * b;
			f[t] = 1;
			append_factor(cert, IntPoly(std::move(f)), Provenance::SophieGermain);
		}
	} else if (std::holds_alternative<UnitConstantWitness>(w)) {
		if (a == 1) {
			for (unsigned long d : divisors_of(n))
				append_factor(cert, cyclotomic(d), Provenance::Cyclotomic);
		} else if (a == -1) {
			const unsigned long u = odd_part(n);
			const unsigned long twopow = (n / u) * 2;
			if (u == 1)
				throw std::invalid_argument("factor_once: x^n + 1 with n a power of two is irreducible");
			for (unsigned long d : divisors_of(u))
				append_factor(cert, cyclotomic(twopow * d), Provenance::Cyclotomic);
		} else {
			throw std::invalid_argument("factor_once: unit witness with |a| != 1");
		}
	} else if (std::holds_alternative<ZeroConstantWitness>(w)) {
		if (a != 0)
			throw std::invalid_argument("factor_once: zero witness with a != 0");
		append_factor(cert, IntPoly::monomial(1, 1), Provenance::GeometricSum);
		append_factor(cert, IntPoly::monomial(1, n - 1), Provenance::GeometricSum);
	} else {
		throw std::invalid_argument("factor_once: verdict carries no constructive witness");
	}

	check_product(cert, "factor_once");
	return cert;
}

Certificate factor_plus_bm(unsigned long n, const BigInt &b, unsigned long m)
{
	if (b == 0)
		throw std::invalid_argument("factor_plus_bm: b != 0 required");
	if (m < 2 || n < 2 || n % m != 0)
		throw std::invalid_argument("factor_plus_bm: m | n with m >= 2 required");
	const unsigned long r = two_adic_valuation(m);
	const unsigned long m1 = m >> r;
	if (m1 == 1)
		throw std::invalid_argument(
		    "factor_plus_bm: exception class x^n + b^(2^r), no cyclotomic split exists");

	Certificate cert;
	cert.target = IntPoly::binomial(n, -big_pow(b, m));
	for (unsigned long d : divisors_of(m1))
		append_factor(cert, scaled_cyclotomic(d, b, n / m, r), Provenance::ScaledCyclotomic);
	check_product(cert, "factor_plus_bm");
	return cert;
}

Certificate factor_deep(unsigned long n, const BigInt &a, const Verdict &verdict)
{
	Certificate cert = factor_once(n, a, verdict);
	bool changed = true;
	while (changed) {
		changed = false;
		for (std::size_t i = 0; i < cert.factors.size(); ++i) {
			const IntPoly &f = cert.factors[i];
			if (!f.is_binomial_form() || f.degree() < 2)
				continue;
			const unsigned long k = static_cast<unsigned long>(f.degree());
			const BigInt c = -f.coeff(0);
			Verdict v = decide(k, c);
			if (!v.reducible())
				continue;
			Certificate sub = factor_once(k, c, v);
			cert.factors.erase(cert.factors.begin() + i);
			cert.provenance.erase(cert.provenance.begin() + i);
			cert.factors.insert(cert.factors.begin() + i, sub.factors.begin(), sub.factors.end());
			cert.provenance.insert(cert.provenance.begin() + i, sub.provenance.begin(),
			                       sub.provenance.end());
			changed = true;
			break;
		}
	}
	check_product(cert, "factor_deep");
	return cert;
}

bool verify_certificate(const Certificate &cert)
{
	if (cert.target.degree() < 1 || cert.factors.size() < 2)
		return false;
	IntPoly product = IntPoly::constant(1);
	for (const IntPoly &f : cert.factors) {
		if (f.degree() < 1 || f.degree() >= cert.target.degree())
			return false;
		product = poly_mul(product, f);
	}
	return product == cert.target;
}

// -- JSON ----------------------------------------------------------------------

namespace {

json rational_to_json(const Rational &r)
{
	Rational c = r;
	c.canonicalize();
	return json{{"num", c.get_num().get_str()}, {"den", c.get_den().get_str()}};
}

Rational rational_from_json(const json &j)
{
	if (!j.is_object() || !j.contains("num") || !j.contains("den"))
		throw parse_error("rational: expected {num, den}", 0);
	Rational r(BigInt(j.at("num").get<std::string>(), 10), BigInt(j.at("den").get<std::string>(), 10));
	r.canonicalize();
	return r;
}

json poly_to_json(const IntPoly &p)
{
	json arr = json::array();
	for (const BigInt &c : p.coeffs())
		arr.push_back(c.get_str());
	return arr;
}

IntPoly poly_from_json(const json &j)
{
	if (!j.is_array())
		throw parse_error("polynomial: expected coefficient array", 0);
	std::vector<BigInt> coeffs;
	for (const auto &c : j)
		coeffs.emplace_back(c.get<std::string>(), 10);
	return IntPoly(std::move(coeffs));
}

json witness_to_json(const Witness &w)
{
	json j;
	std::visit(
	    [&](const auto &x) {
		    using T = std::decay_t<decltype(x)>;
		    if constexpr (std::is_same_v<T, PerfectPowerWitness>) {
			    j = json{{"type", "perfect-power"},
			             {"base", rational_to_json(x.base)},
			             {"exponent", x.exponent}};
		    } else if constexpr (std::is_same_v<T, SophieGermainWitness>) {
			    j = json{{"type", "sophie-germain"}, {"base", rational_to_json(x.base)}};
		    } else if constexpr (std::is_same_v<T, EisensteinWitness>) {
			    j = json{{"type", "eisenstein"}, {"prime", x.prime.get_str()}};
		    } else if constexpr (std::is_same_v<T, SelmerParityWitness>) {
			    j = json{{"type", "selmer-parity"}, {"k", x.k}, {"base", poly_to_json(x.base)}};
		    } else if constexpr (std::is_same_v<T, UnitConstantWitness>) {
			    j = json{{"type", "unit-constant"}};
		    } else if constexpr (std::is_same_v<T, ZeroConstantWitness>) {
			    j = json{{"type", "zero-constant"}};
		    }
	    },
	    w);
	return j;
}

Witness witness_from_json(const json &j)
{
	const std::string type = j.at("type").get<std::string>();
	if (type == "perfect-power")
		return PerfectPowerWitness{rational_from_json(j.at("base")),
		                           j.at("exponent").get<unsigned long>()};
	if (type == "sophie-germain")
		return SophieGermainWitness{rational_from_json(j.at("base"))};
	if (type == "eisenstein")
		return EisensteinWitness{BigInt(j.at("prime").get<std::string>(), 10)};
	if (type == "selmer-parity")
		return SelmerParityWitness{j.at("k").get<unsigned long>(), poly_from_json(j.at("base"))};
	if (type == "unit-constant")
		return UnitConstantWitness{};
	if (type == "zero-constant")
		return ZeroConstantWitness{};
	throw parse_error("unknown witness type: " + type, 0);
}

} // namespace

std::string certificate_document_to_json(const CertificateDocument &doc, int indent)
{
	json j;
	j["n"] = doc.instance.n;
	j["a"] = rational_to_json(doc.instance.a);
	if (doc.instance.normalized)
		j["normalized"] = doc.instance.normalized->get_str();
	j["target"] = poly_to_json(doc.certificate.target);
	json factors = json::array();
	for (const IntPoly &f : doc.certificate.factors)
		factors.push_back(poly_to_json(f));
	j["factors"] = std::move(factors);
	json prov = json::array();
	for (Provenance p : doc.certificate.provenance)
		prov.push_back(provenance_name(p));
	j["provenance"] = std::move(prov);
	json wits = json::array();
	for (const Witness &w : doc.witnesses)
		wits.push_back(witness_to_json(w));
	j["witnesses"] = std::move(wits);
	return j.dump(indent) + "\n";
}

CertificateDocument certificate_document_from_json(const std::string &text)
{
	json j;
	try {
		j = json::parse(text);
	} catch (const json::parse_error &e) {
		throw parse_error(std::string("certificate document: ") + e.what(), e.byte);
	}
	try {
		CertificateDocument doc;
		doc.instance.n = j.at("n").get<unsigned long>();
		doc.instance.a = rational_from_json(j.at("a"));
		if (j.contains("normalized"))
			doc.instance.normalized = BigInt(j.at("normalized").get<std::string>(), 10);
		doc.certificate.target = poly_from_json(j.at("target"));
		for (const auto &f : j.at("factors"))
			doc.certificate.factors.push_back(poly_from_json(f));
		for (const auto &p : j.at("provenance")) {
			auto tag = provenance_from_name(p.get<std::string>());
			if (!tag)
				throw parse_error("unknown provenance tag: " + p.get<std::string>(), 0);
			doc.certificate.provenance.push_back(*tag);
		}
		if (j.contains("witnesses"))
			for (const auto &w : j.at("witnesses"))
				doc.witnesses.push_back(witness_from_json(w));
		return doc;
	} catch (const json::exception &e) {
		throw parse_error(std::string("certificate document: ") + e.what(), 0);
	}
}

std::string verdict_to_json(unsigned long n, const Rational &a, const Verdict &v, int indent)
{
	json j;
	j["n"] = n;
	j["a"] = rational_to_json(a);
	j["decision"] = v.reducible() ? "reducible" : "irreducible";
	json wits = json::array();
	for (const Witness &w : v.witnesses)
		wits.push_back(witness_to_json(w));
	j["witnesses"] = std::move(wits);
	return j.dump(indent) + "\n";
}

} // namespace capelli
