#include "capelli/poly.hpp"

#include "capelli/arith.hpp"
#include "capelli/errors.hpp"

#include <cctype>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace capelli {

namespace {
const BigInt kZero = 0;
}

IntPoly::IntPoly(std::vector<BigInt> ascending_coeffs) : coeffs_(std::move(ascending_coeffs))
{
	trim();
}

void IntPoly::trim()
{
	while (!coeffs_.empty() && coeffs_.back() == 0)
		coeffs_.pop_back();
}

IntPoly IntPoly::constant(const BigInt &c) { return IntPoly({c}); }

IntPoly IntPoly::monomial(const BigInt &c, std::size_t degree)
{
	std::vector<BigInt> v(degree + 1, kZero);
	v[degree] = c;
	return IntPoly(std::move(v));
}

IntPoly IntPoly::binomial(unsigned long n, const BigInt &a)
{
	std::vector<BigInt> v(n + 1, kZero);
	v[0] = -a;
	v[n] = 1;
	return IntPoly(std::move(v));
}

const BigInt &IntPoly::coeff(std::size_t i) const
{
	if (i >= coeffs_.size())
		return kZero;
	return coeffs_[i];
}

const BigInt &IntPoly::leading() const
{
	if (coeffs_.empty())
		throw std::logic_error("leading coefficient of the zero polynomial");
	return coeffs_.back();
}

bool IntPoly::is_binomial_form() const
{
	if (degree() < 1 || coeffs_.back() != 1)
		return false;
	for (std::size_t i = 1; i + 1 < coeffs_.size(); ++i)
		if (coeffs_[i] != 0)
			return false;
	return true;
}

IntPoly IntPoly::operator-() const
{
	IntPoly r = *this;
	for (BigInt &c : r.coeffs_)
		c = -c;
	return r;
}

IntPoly operator+(const IntPoly &p, const IntPoly &q)
{
	std::vector<BigInt> v(std::max(p.coeffs_.size(), q.coeffs_.size()), kZero);
	for (std::size_t i = 0; i < v.size(); ++i)
		v[i] = p.coeff(i) + q.coeff(i);
	return IntPoly(std::move(v));
}

IntPoly operator-(const IntPoly &p, const IntPoly &q)
{
	std::vector<BigInt> v(std::max(p.coeffs_.size(), q.coeffs_.size()), kZero);
	for (std::size_t i = 0; i < v.size(); ++i)
		v[i] = p.coeff(i) - q.coeff(i);
	return IntPoly(std::move(v));
}

bool IntPoly::canonical_less(const IntPoly &p, const IntPoly &q)
{
	if (p.degree() != q.degree())
		return p.degree() < q.degree();
	for (std::size_t i = 0; i < p.coeffs_.size(); ++i) {
		int c = cmp(p.coeffs_[i], q.coeffs_[i]);
		if (c != 0)
			return c < 0;
	}
	return false;
}

IntPoly poly_mul(const IntPoly &p, const IntPoly &q)
{
	if (p.is_zero() || q.is_zero())
		return IntPoly();
	const auto &pc = p.coeffs();
	const auto &qc = q.coeffs();
	std::vector<BigInt> v(pc.size() + qc.size() - 1, kZero);
	for (std::size_t i = 0; i < pc.size(); ++i)
		for (std::size_t j = 0; j < qc.size(); ++j)
			mpz_addmul(v[i + j].get_mpz_t(), pc[i].get_mpz_t(), qc[j].get_mpz_t());
	return IntPoly(std::move(v));
}

std::optional<IntPoly> poly_div_exact(const IntPoly &p, const IntPoly &d)
{
	if (d.is_zero())
		throw std::invalid_argument("poly_div_exact: division by the zero polynomial");
	if (p.is_zero())
		return IntPoly();
	if (p.degree() < d.degree())
		return std::nullopt;

	std::vector<BigInt> rem = p.coeffs();
	const auto &dc = d.coeffs();
	const BigInt &lead = dc.back();
	std::size_t qsize = rem.size() - dc.size() + 1;
	std::vector<BigInt> quot(qsize, kZero);

	for (std::size_t k = qsize; k-- > 0;) {
		BigInt &top = rem[k + dc.size() - 1];
		if (top == 0)
			continue;
		if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
			return std::nullopt; // quotient would leave the integer ring
		BigInt q = top / lead;
		for (std::size_t i = 0; i < dc.size(); ++i)
			mpz_submul(rem[k + i].get_mpz_t(), q.get_mpz_t(), dc[i].get_mpz_t());
		quot[k] = std::move(q);
	}
	for (const BigInt &c : rem)
		if (c != 0)
			return std::nullopt;
	return IntPoly(std::move(quot));
}

BigInt poly_eval(const IntPoly &p, const BigInt &x0)
{
	BigInt acc = 0;
	const auto &pc = p.coeffs();
	for (std::size_t i = pc.size(); i-- > 0;) {
		acc *= x0;
		acc += pc[i];
	}
	return acc;
}

IntPoly substitute_power(const IntPoly &p, unsigned long k)
{
	if (k == 0)
		throw std::invalid_argument("substitute_power: k >= 1 required");
	if (p.is_zero() || k == 1)
		return p;
	const auto &pc = p.coeffs();
	std::vector<BigInt> v((pc.size() - 1) * k + 1, kZero);
	for (std::size_t i = 0; i < pc.size(); ++i)
		v[i * k] = pc[i];
	return IntPoly(std::move(v));
}

IntPoly cyclotomic(unsigned long n)
{
	if (n == 0)
		throw std::invalid_argument("cyclotomic: n >= 1 required");

	static std::mutex memo_mutex;
	static std::map<unsigned long, IntPoly> memo;
	{
		std::lock_guard<std::mutex> lock(memo_mutex);
		auto it = memo.find(n);
		if (it != memo.end())
			return it->second;
	}

	IntPoly result;
	if (n == 1) {
		result = IntPoly({-1, 1});
	} else {
		// exact division keeps every intermediate inside Z[x]
		IntPoly denom = IntPoly::constant(1);
		for (unsigned long d : divisors_of(n))
			if (d < n)
				denom = poly_mul(denom, cyclotomic(d));
		auto q = poly_div_exact(IntPoly::binomial(n, 1), denom);
		if (!q)
			throw std::logic_error("cyclotomic: inexact division for n = " + std::to_string(n));
		result = std::move(*q);
	}

	std::lock_guard<std::mutex> lock(memo_mutex);
	return memo.emplace(n, std::move(result)).first->second;
}

IntPoly scaled_cyclotomic(unsigned long d, const BigInt &b, unsigned long k, unsigned long r)
{
	if (d == 0 || d % 2 == 0)
		throw std::invalid_argument("scaled_cyclotomic: d must be odd");
	if (b == 0)
		throw std::invalid_argument("scaled_cyclotomic: b != 0 required");
	if (k == 0)
		throw std::invalid_argument("scaled_cyclotomic: k >= 1 required");

	const IntPoly phi = cyclotomic((1ul << (r + 1)) * d);
	const std::size_t deg = static_cast<std::size_t>(phi.degree()); // 2^r * phi(d)

	// homogenize: coefficient of x^i picks up b^(deg - i)
	std::vector<BigInt> v(deg + 1, kZero);
	for (std::size_t i = 0; i <= deg; ++i)
		v[i] = phi.coeff(i) * big_pow(b, static_cast<unsigned long>(deg - i));
	IntPoly homogenized(std::move(v));
	if (homogenized.degree() != static_cast<int>(deg))
		throw std::logic_error("scaled_cyclotomic: homogenization degree invariant violated");
	return substitute_power(homogenized, k);
}

// -- text form ----------------------------------------------------------------

namespace {

struct Cursor {
	std::string_view text;
	std::size_t pos = 0;

	void skip_ws()
	{
		while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
			++pos;
	}
	bool done() const { return pos >= text.size(); }
	char peek() const { return text[pos]; }
};

BigInt parse_number(Cursor &c)
{
	c.skip_ws();
	std::size_t start = c.pos;
	while (!c.done() && std::isdigit(static_cast<unsigned char>(c.peek())))
		++c.pos;
	if (c.pos == start)
		throw parse_error("expected a number", start);
	return BigInt(std::string(c.text.substr(start, c.pos - start)), 10);
}

unsigned long parse_exponent(Cursor &c)
{
	std::size_t at = c.pos;
	BigInt e = parse_number(c);
	if (e > 1000000)
		throw parse_error("exponent out of range", at);
	return e.get_ui();
}

// term := number ['*' xpart] | xpart ; xpart := 'x' ['^' exponent]
std::pair<BigInt, unsigned long> parse_term(Cursor &c)
{
	c.skip_ws();
	if (c.done())
		throw parse_error("expected a term", c.pos);

	BigInt coeff = 1;
	bool have_coeff = false;
	if (std::isdigit(static_cast<unsigned char>(c.peek()))) {
		coeff = parse_number(c);
		have_coeff = true;
		c.skip_ws();
		if (c.done() || c.peek() != '*')
			return {coeff, 0};
		++c.pos; // '*'
		c.skip_ws();
	}
	if (c.done() || c.peek() != 'x')
		throw parse_error(have_coeff ? "expected x after '*'" : "expected a term", c.pos);
	++c.pos; // 'x'
	c.skip_ws();
	unsigned long e = 1;
	if (!c.done() && c.peek() == '^') {
		++c.pos;
		e = parse_exponent(c);
	}
	return {coeff, e};
}

} // namespace

IntPoly poly_parse(std::string_view text)
{
	Cursor c{text};
	c.skip_ws();
	if (c.done())
		throw parse_error("empty polynomial", c.pos);

	std::map<unsigned long, BigInt> terms;
	int sign = 1;
	if (c.peek() == '+' || c.peek() == '-') {
		sign = (c.peek() == '-') ? -1 : 1;
		++c.pos;
	}
	while (true) {
		auto [coeff, e] = parse_term(c);
		terms[e] += sign * coeff;
		c.skip_ws();
		if (c.done())
			break;
		if (c.peek() == '+' || c.peek() == '-') {
			sign = (c.peek() == '-') ? -1 : 1;
			++c.pos;
		} else {
			throw parse_error("expected '+' or '-'", c.pos);
		}
	}

	std::vector<BigInt> v(terms.rbegin()->first + 1, kZero);
	for (const auto &[e, coeff] : terms)
		v[e] = coeff;
	return IntPoly(std::move(v));
}

std::string poly_format(const IntPoly &p)
{
	if (p.is_zero())
		return "0";
	std::ostringstream out;
	bool first = true;
	for (std::size_t i = p.coeffs().size(); i-- > 0;) {
		const BigInt &c = p.coeff(i);
		if (c == 0)
			continue;
		BigInt abs_c = big_abs(c);
		if (first) {
			if (c < 0)
				out << "-";
			first = false;
		} else {
			out << (c < 0 ? " - " : " + ");
		}
		if (i == 0) {
			out << abs_c.get_str();
		} else {
			if (abs_c != 1)
				out << abs_c.get_str() << "*";
			out << "x";
			if (i > 1)
				out << "^" << i;
		}
	}
	return out.str();
}

} // namespace capelli
