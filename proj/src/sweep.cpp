#include "capelli/sweep.hpp"

#include "capelli/arith.hpp"
#include "capelli/errors.hpp"
#include "capelli/oracle.hpp"

#include <json.hpp>

#include <chrono>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace capelli {

using nlohmann::json;

bool SweepReport::clean() const
{
	if (!mismatches.empty() || !resource_error.empty())
		return false;
	for (const LemmaResult &r : lemma_results)
		if (!r.pass())
			return false;
	return true;
}

namespace {

struct Cell {
	unsigned long n;
	long a;
};

std::vector<Cell> grid_cells(const SweepOptions &opt)
{
	std::vector<Cell> cells;
	for (unsigned long n = opt.n_min; n <= opt.n_max; ++n)
		for (long a = -opt.a_max; a <= opt.a_max; ++a)
			if (a != 0)
				cells.push_back({n, a});
	return cells;
}

bool is_twice_a_square(const BigInt &b)
{
	if (b <= 0 || !is_even(b))
		return false;
	BigInt half = b / 2;
	if (half == 1)
		return true; // d = 1
	return nth_root_exact(half, 2).has_value();
}

} // namespace

LemmaResult check_exponent_gcd_condition(unsigned long n_min, unsigned long n_max, long a_max,
                                         unsigned long trial_bound)
{
	LemmaResult result;
	result.name = "exponent-gcd-necessary-condition";
	for (unsigned long n = n_min; n <= n_max; ++n) {
		for (long a = -a_max; a <= a_max; ++a) {
			if (a == -1 || a == 0 || a == 1)
				continue;
			if (oracle_decide(n, BigInt(a)).decision != Decision::Reducible)
				continue;
			++result.checked;
			PrimeFactorization f = factorize(big_abs(BigInt(a)), trial_bound);
			const unsigned long g = f.exponent_gcd();
			if (g < 2 || std::gcd(g, n) <= 1)
				result.counterexamples.push_back(
				    {n, BigInt(a), "exponent gcd " + std::to_string(g) + " violates the condition"});
		}
	}
	return result;
}

namespace {

// Shared grid for the power-of-two-exponent lemma checks: m = 2^r with
// r in [1,3], t in [1,6], property-P bases up to 20, oracle degree <= 24.
template <typename Visitor> void for_power_of_two_grid(unsigned long trial_bound, Visitor &&visit)
{
	for (unsigned long r = 1; r <= 3; ++r) {
		const unsigned long m = 1ul << r;
		for (unsigned long t = 1; t <= 6; ++t) {
			const unsigned long n = m * t;
			if (n < 2 || n > kOracleMaxDegree)
				continue;
			for (unsigned long b = 2; b <= 20; ++b) {
				if (!has_property_p(BigInt(b), n, trial_bound))
					continue;
				visit(r, t, b, n);
			}
		}
	}
}

} // namespace

LemmaResult check_even_condition(unsigned long trial_bound)
{
	LemmaResult result;
	result.name = "reducible-forces-even-base-and-cofactor";
	for_power_of_two_grid(trial_bound, [&](unsigned long r, unsigned long t, unsigned long b,
	                                       unsigned long n) {
		++result.checked;
		const BigInt constant = -big_pow(BigInt(b), 1ul << r); // x^n + b^(2^r)
		if (oracle_decide(n, constant).decision != Decision::Reducible)
			return;
		if (b % 2 != 0 || t % 2 != 0)
			result.counterexamples.push_back(
			    {n, constant,
			     "reducible with b = " + std::to_string(b) + ", n/m = " + std::to_string(t)});
	});
	return result;
}

LemmaResult check_power_of_two_characterization(unsigned long trial_bound)
{
	LemmaResult result;
	result.name = "power-of-two-exponent-characterization";
	for_power_of_two_grid(trial_bound, [&](unsigned long r, unsigned long t, unsigned long b,
	                                       unsigned long n) {
		++result.checked;
		const BigInt base(b);
		const BigInt constant = -big_pow(base, 1ul << r);
		const bool reducible = oracle_decide(n, constant).decision == Decision::Reducible;
		const bool expected = (t % 2 == 0) && (r == 1) && is_twice_a_square(base);
		if (reducible != expected) {
			result.counterexamples.push_back(
			    {n, constant,
			     std::string("oracle says ") + (reducible ? "reducible" : "irreducible") +
			         ", characterization says " + (expected ? "reducible" : "irreducible")});
			return;
		}
		if (!expected)
			return;
		// the constructed certificate must be the displayed two-factor split
		const BigInt d = *nth_root_exact(base / 2, 2);
		Certificate cert = factor_once(n, constant, decide(n, constant, trial_bound));
		std::vector<BigInt> minus(t + 1, BigInt(0)), plus(t + 1, BigInt(0));
		minus[0] = plus[0] = 2 * d * d;
		minus[t / 2] = -2 * d;
		plus[t / 2] = 2 * d;
		minus[t] = plus[t] = 1;
		const std::vector<IntPoly> expected_factors{IntPoly(std::move(minus)),
		                                            IntPoly(std::move(plus))};
		if (cert.factors != expected_factors)
			result.counterexamples.push_back({n, constant, "certificate differs from the split"});
	});
	return result;
}

LemmaResult check_tower_irreducibility(unsigned long trial_bound)
{
	LemmaResult result;
	result.name = "tower-irreducibility";
	for (unsigned long r = 1; r <= 3; ++r) {
		const unsigned long m = 1ul << r;
		for (unsigned long u : {1ul, 3ul, 5ul}) {
			for (unsigned long i = 0; i <= r; ++i) {
				const unsigned long deg = (1ul << i) * u;
				if (deg < 2 || deg > kOracleMaxDegree)
					continue;
				for (unsigned long b = 2; b <= 20; ++b) {
					if (!has_property_p(BigInt(b), deg, trial_bound))
						continue;
					++result.checked;
					const BigInt constant = -big_pow(BigInt(b), m);
					if (oracle_decide(deg, constant).decision != Decision::Irreducible)
						result.counterexamples.push_back(
						    {deg, constant,
						     "x^" + std::to_string(deg) + " + " + std::to_string(b) + "^" +
						         std::to_string(m) + " split unexpectedly"});
				}
			}
		}
	}
	return result;
}

LemmaResult check_selmer_soundness(long a_max, unsigned long trial_bound)
{
	LemmaResult result;
	result.name = "selmer-parity-soundness";
	for (unsigned long s = 1; s <= 5; ++s) {
		for (long c = -a_max; c <= a_max; ++c) {
			if (c >= -1 && c <= 1)
				continue;
			const BigInt constant(c);
			if (!eisenstein_witness(s, constant, trial_bound))
				continue;
			IntPoly g = IntPoly::binomial(s, constant);
			if (!selmer_parity_certificate(g))
				continue;
			++result.checked;
			if (oracle_decide(2 * s, constant).decision != Decision::Irreducible)
				result.counterexamples.push_back(
				    {2 * s, constant, "certified base split after the x -> x^2 substitution"});
		}
	}
	return result;
}

SweepReport run_sweep(const SweepOptions &options)
{
	if (options.n_min < 2 || options.n_max < options.n_min)
		throw std::invalid_argument("sweep: need 2 <= n_min <= n_max");
	if (options.n_max > kOracleMaxDegree)
		throw std::invalid_argument("sweep: n_max exceeds the oracle degree bound " +
		                            std::to_string(kOracleMaxDegree));
	if (options.a_max < 1)
		throw std::invalid_argument("sweep: a_max >= 1 required");

	const auto t0 = std::chrono::steady_clock::now();
	SweepReport report;
	report.n_min = options.n_min;
	report.n_max = options.n_max;
	report.a_min = -options.a_max;
	report.a_max = options.a_max;

	const std::vector<Cell> cells = grid_cells(options);
	report.cells = cells.size();

	std::vector<unsigned char> theorem_red(cells.size(), 0);
	std::vector<unsigned char> oracle_red(cells.size(), 0);
	const unsigned jobs = std::max(1u, options.jobs);

	auto worker = [&](unsigned offset) {
		for (std::size_t i = offset; i < cells.size(); i += jobs) {
			const BigInt a(cells[i].a);
			theorem_red[i] = decide(cells[i].n, a, options.trial_bound).reducible() ? 1 : 0;
			oracle_red[i] =
			    oracle_decide(cells[i].n, a).decision == Decision::Reducible ? 1 : 0;
		}
	};

	try {
		if (jobs == 1) {
			worker(0);
		} else {
			std::vector<std::thread> pool;
			std::vector<std::exception_ptr> errors(jobs);
			for (unsigned j = 0; j < jobs; ++j)
				pool.emplace_back([&, j] {
					try {
						worker(j);
					} catch (...) {
						errors[j] = std::current_exception();
					}
				});
			for (auto &th : pool)
				th.join();
			for (const auto &e : errors)
				if (e)
					std::rethrow_exception(e);
		}

		for (std::size_t i = 0; i < cells.size(); ++i)
			if (theorem_red[i] != oracle_red[i])
				report.mismatches.push_back(
				    {cells[i].n, BigInt(cells[i].a),
				     theorem_red[i] ? Decision::Reducible : Decision::Irreducible,
				     oracle_red[i] ? Decision::Reducible : Decision::Irreducible});

		if (options.run_lemma_checks) {
			report.lemma_results.push_back(check_exponent_gcd_condition(
			    options.n_min, options.n_max, options.a_max, options.trial_bound));
			report.lemma_results.push_back(check_even_condition(options.trial_bound));
			report.lemma_results.push_back(
			    check_power_of_two_characterization(options.trial_bound));
			report.lemma_results.push_back(check_tower_irreducibility(options.trial_bound));
			report.lemma_results.push_back(
			    check_selmer_soundness(options.a_max, options.trial_bound));
		}
	} catch (const factor_bound_error &e) {
		report.resource_error = e.what();
	}

	report.elapsed_seconds =
	    std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	return report;
}

std::string sweep_report_to_json(const SweepReport &report, int indent)
{
	json j;
	j["grid"] = {{"n_min", report.n_min},
	             {"n_max", report.n_max},
	             {"a_min", report.a_min},
	             {"a_max", report.a_max}};
	j["cells"] = report.cells;
	json mm = json::array();
	for (const Mismatch &m : report.mismatches)
		mm.push_back({{"n", m.n},
		              {"a", m.a.get_str()},
		              {"theorem", m.theorem_decision == Decision::Reducible ? "reducible"
		                                                                    : "irreducible"},
		              {"oracle", m.oracle_decision == Decision::Reducible ? "reducible"
		                                                                  : "irreducible"}});
	j["mismatches"] = std::move(mm);
	json lemmas = json::array();
	for (const LemmaResult &r : report.lemma_results) {
		json ce = json::array();
		for (const Counterexample &c : r.counterexamples)
			ce.push_back({{"n", c.n}, {"a", c.a.get_str()}, {"detail", c.detail}});
		lemmas.push_back({{"name", r.name},
		                  {"checked", r.checked},
		                  {"pass", r.pass()},
		                  {"counterexamples", std::move(ce)}});
	}
	j["lemma_results"] = std::move(lemmas);
	j["elapsed_seconds"] = report.elapsed_seconds;
	if (!report.resource_error.empty())
		j["resource_error"] = report.resource_error;
	return j.dump(indent) + "\n";
}

std::string sweep_report_table(const SweepReport &report)
{
	std::ostringstream out;
	out << "grid: n in [" << report.n_min << "," << report.n_max << "], a in [" << report.a_min
	    << "," << report.a_max << "] \\ {0}  (" << report.cells << " cells)\n";
	out << "mismatches: " << report.mismatches.size() << "\n";
	for (const Mismatch &m : report.mismatches)
		out << "  n=" << m.n << " a=" << m.a.get_str() << "  criterion="
		    << (m.theorem_decision == Decision::Reducible ? "reducible" : "irreducible")
		    << " oracle="
		    << (m.oracle_decision == Decision::Reducible ? "reducible" : "irreducible") << "\n";
	for (const LemmaResult &r : report.lemma_results) {
		out << (r.pass() ? "PASS" : "FAIL") << "  " << r.name << "  (" << r.checked
		    << " instances";
		if (!r.pass())
			out << ", " << r.counterexamples.size() << " counterexamples";
		out << ")\n";
		for (const Counterexample &c : r.counterexamples)
			out << "  n=" << c.n << " a=" << c.a.get_str() << "  " << c.detail << "\n";
	}
	out << "elapsed: " << report.elapsed_seconds << " s\n";
	return out.str();
}

} // namespace capelli
