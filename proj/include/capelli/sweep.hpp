#pragma once

#include "capelli/binomial.hpp"
#include "capelli/numbers.hpp"

#include <string>
#include <vector>

namespace capelli {

/// One grid cell where the criterion and the oracle disagreed.
struct Mismatch {
	unsigned long n = 0;
	BigInt a;
	Decision theorem_decision = Decision::Irreducible;
	Decision oracle_decision = Decision::Irreducible;
};

/// One falsified instance of a lemma checker.
struct Counterexample {
	unsigned long n = 0;
	BigInt a;
	std::string detail;
};

struct LemmaResult {
	std::string name;
	unsigned long checked = 0;
	std::vector<Counterexample> counterexamples;
	bool pass() const { return counterexamples.empty(); }
};

struct SweepOptions {
	unsigned long n_min = 2;
	unsigned long n_max = 12;
	long a_max = 200;          // grid is a in [-a_max, a_max] \ {0}
	unsigned jobs = 1;
	unsigned long trial_bound = kDefaultTrialBound;
	bool run_lemma_checks = true;
};

struct SweepReport {
	unsigned long n_min = 0, n_max = 0;
	long a_min = 0, a_max = 0;
	unsigned long cells = 0;
	std::vector<Mismatch> mismatches;
	std::vector<LemmaResult> lemma_results;
	double elapsed_seconds = 0.0;
	std::string resource_error; // nonempty when the run stopped early

	bool clean() const;
};

/// Runs decide against oracle_decide over the full grid, then the lemma
/// checkers on their pinned grids. Cells may be distributed over
/// options.jobs workers; the report is identical regardless of job count.
SweepReport run_sweep(const SweepOptions &options);

// Individual lemma checkers, each on its pinned grid. Exposed so the
// acceptance suite can run them directly.

/// Exponent-gcd necessary condition: every oracle-reducible x^n - a with
/// |a| > 1 on the grid has gcd of prime exponents of |a| >= 2, sharing a
/// factor with n.
LemmaResult check_exponent_gcd_condition(unsigned long n_min, unsigned long n_max, long a_max,
                                         unsigned long trial_bound = kDefaultTrialBound);

/// For m = 2^r, property-P b: x^n + b^m oracle-reducible forces b and n/m
/// both even. Grid: r in [1,3], t = n/m in [1,6], b in [2,20], n <= 24.
LemmaResult check_even_condition(unsigned long trial_bound = kDefaultTrialBound);

/// Characterization: x^(2^r t) + b^(2^r) with property-P b is
/// oracle-reducible exactly when t is even, r = 1 and b = 2d^2, and the
/// constructed certificate matches the two-factor split. Same grid as
/// check_even_condition.
LemmaResult check_power_of_two_characterization(unsigned long trial_bound = kDefaultTrialBound);

/// Towers x^(2^i u) + b^(2^r), u odd, i <= r, property-P b stay
/// oracle-irreducible. Grid: r in [1,3], u in {1,3,5}, b in [2,20], degree
/// in [2,24].
LemmaResult check_tower_irreducibility(unsigned long trial_bound = kDefaultTrialBound);

/// Selmer parity soundness: binomials g = x^s - c (s <= 5, |c| <= a_max)
/// carrying an Eisenstein witness and a parity certificate have g(x^2)
/// oracle-irreducible.
LemmaResult check_selmer_soundness(long a_max, unsigned long trial_bound = kDefaultTrialBound);

std::string sweep_report_to_json(const SweepReport &report, int indent = 2);

/// Human-readable table, one line per lemma plus the mismatch summary.
std::string sweep_report_table(const SweepReport &report);

} // namespace capelli
