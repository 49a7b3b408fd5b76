// Command-line front end: decide/factor/verify binomial instances, print
// cyclotomic polynomials, and run the criterion-vs-oracle sweep.
//
// Exit codes: 0 success (reducible / valid / clean sweep), 1 negative result
// (irreducible / invalid certificate / failed sweep), 2 usage or parse error,
// 3 resource bound exceeded.

#include "capelli/binomial.hpp"
#include "capelli/errors.hpp"
#include "capelli/oracle.hpp"
#include "capelli/poly.hpp"
#include "capelli/sweep.hpp"

#include <CLI11.hpp>

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace capelli;

constexpr int kExitReducible = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

Rational parse_rational_literal(const std::string &text)
{
	std::size_t i = 0;
	auto fail = [&](const std::string &msg) { throw parse_error(msg, i); };
	if (text.empty())
		fail("empty rational literal");
	bool negative = false;
	if (text[i] == '+' || text[i] == '-') {
		negative = text[i] == '-';
		++i;
	}
	std::size_t digits_start = i;
	while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
		++i;
	if (i == digits_start)
		fail("expected digits");
	BigInt num(text.substr(digits_start, i - digits_start), 10);
	BigInt den = 1;
	if (i < text.size()) {
		if (text[i] != '/')
			fail("expected '/' or end of literal");
		++i;
		std::size_t den_start = i;
		while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
			++i;
		if (i == den_start || i != text.size())
			fail("malformed denominator");
		den = BigInt(text.substr(den_start), 10);
		if (den == 0)
			fail("zero denominator");
	}
	Rational r(negative ? -num : num, den);
	r.canonicalize();
	return r;
}

void write_text_output(const std::string &text, const std::string &out_file)
{
	if (out_file.empty())
		return;
	std::ofstream out(out_file);
	if (!out)
		throw std::runtime_error("cannot write to " + out_file);
	out << text;
}

std::string decide_headline(const Verdict &v, unsigned long n)
{
	if (v.reducible()) {
		std::string line = "REDUCIBLE";
		if (!v.witnesses.empty())
			line += ": " + witness_text(v.witnesses.front(), n);
		for (std::size_t i = 1; i < v.witnesses.size(); ++i)
			line += "\n  also: " + witness_text(v.witnesses[i], n);
		return line;
	}
	std::string line = "IRREDUCIBLE";
	if (!v.witnesses.empty())
		line += ": " + witness_text(v.witnesses.front(), n);
	return line;
}

struct InstanceArgs {
	unsigned long n = 2;
	std::string a_text;
	bool json = false;
	bool allow_zero = false;
	unsigned long trial_bound = kDefaultTrialBound;
	std::string out_file;
};

void add_instance_options(CLI::App *cmd, InstanceArgs &args, bool with_out)
{
	cmd->add_option("n", args.n, "degree of x^n - a")->required();
	cmd->add_option("a", args.a_text,
	                "constant a as integer or p/q (use -- before negative values)")
	    ->required();
	cmd->add_flag("--json", args.json, "structured output");
	cmd->add_flag("--allow-zero", args.allow_zero, "accept a = 0");
	cmd->add_option("--trial-bound", args.trial_bound, "trial division bound");
	if (with_out)
		cmd->add_option("--out", args.out_file, "write the document to FILE");
}

Rational instance_constant(const InstanceArgs &args)
{
	Rational a = parse_rational_literal(args.a_text);
	if (a == 0 && !args.allow_zero)
		throw parse_error("a = 0 requires --allow-zero", 0);
	if (args.n < 2)
		throw parse_error("n >= 2 required", 0);
	return a;
}

int run_decide(const InstanceArgs &args)
{
	Rational a = instance_constant(args);
	Verdict v = decide_rational(args.n, a, args.trial_bound);
	if (args.json)
		std::cout << verdict_to_json(args.n, a, v);
	else
		std::cout << decide_headline(v, args.n) << "\n";
	return v.reducible() ? kExitReducible : kExitNegative;
}

int run_factor(const InstanceArgs &args, bool deep, bool use_oracle)
{
	Rational a = instance_constant(args);
	Verdict rational_verdict = decide_rational(args.n, a, args.trial_bound);
	if (!rational_verdict.reducible()) {
		std::cout << "no factorization exists: x^" << args.n << " - (" << to_string(a)
		          << ") is irreducible";
		if (!rational_verdict.witnesses.empty())
			std::cout << " (" << witness_text(rational_verdict.witnesses.front(), args.n) << ")";
		std::cout << "\n";
		return kExitNegative;
	}

	const BigInt normalized = reduce_to_integer(args.n, a);
	Verdict verdict = decide(args.n, normalized, args.trial_bound);
	Certificate cert;
	if (use_oracle)
		cert = oracle_factor(args.n, normalized);
	else if (deep)
		cert = factor_deep(args.n, normalized, verdict);
	else
		cert = factor_once(args.n, normalized, verdict);

	if (!verify_certificate(cert)) {
		std::cerr << "internal error: refusing to emit an unverified certificate\n";
		return kExitResource;
	}

	CertificateDocument doc{Binomial{args.n, a, normalized}, cert, verdict.witnesses};
	const std::string json_text = certificate_document_to_json(doc);
	write_text_output(json_text, args.out_file);

	if (args.json) {
		std::cout << json_text;
	} else {
		std::cout << decide_headline(verdict, args.n) << "\n";
		if (a.get_den() != 1)
			std::cout << "reduced instance: y^" << args.n << " - (" << to_string(normalized)
			          << ")\n";
		std::cout << "target: " << poly_format(cert.target) << "\n";
		for (std::size_t i = 0; i < cert.factors.size(); ++i)
			std::cout << "factor: " << poly_format(cert.factors[i]) << "  ["
			          << provenance_name(cert.provenance[i]) << "]\n";
	}
	return kExitReducible;
}

int run_oracle_factor(const InstanceArgs &args)
{
	Rational a = instance_constant(args);
	const BigInt normalized = reduce_to_integer(args.n, a);
	if (normalized == 0)
		throw parse_error("the oracle excludes a = 0", 0);
	Certificate cert = oracle_factor(args.n, normalized);

	if (cert.factors.size() < 2) {
		std::cout << "irreducible: " << poly_format(cert.target) << "\n";
		return kExitNegative;
	}
	Verdict verdict = decide(args.n, normalized, args.trial_bound);
	CertificateDocument doc{Binomial{args.n, a, normalized}, cert, verdict.witnesses};
	const std::string json_text = certificate_document_to_json(doc);
	write_text_output(json_text, args.out_file);
	if (args.json) {
		std::cout << json_text;
	} else {
		std::cout << "target: " << poly_format(cert.target) << "\n";
		for (const IntPoly &f : cert.factors)
			std::cout << "factor: " << poly_format(f) << "\n";
	}
	return kExitReducible;
}

int run_verify(const std::string &in_file)
{
	std::ifstream in(in_file);
	if (!in)
		throw parse_error("cannot read " + in_file, 0);
	std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
	CertificateDocument doc = certificate_document_from_json(text);

	const BigInt normalized = reduce_to_integer(doc.instance.n, doc.instance.a);
	const bool target_matches = doc.certificate.target ==
	                            IntPoly::binomial(doc.instance.n, normalized);
	const bool product_ok = verify_certificate(doc.certificate);
	if (target_matches && product_ok) {
		std::cout << "valid certificate: " << doc.certificate.factors.size() << " factors of "
		          << poly_format(doc.certificate.target) << "\n";
		return kExitReducible;
	}
	std::cout << "invalid certificate: "
	          << (target_matches ? "factor product or degrees are wrong"
	                             : "target does not match the stated instance")
	          << "\n";
	return kExitNegative;
}

int run_cyclotomic(unsigned long index)
{
	std::cout << poly_format(cyclotomic(index)) << "\n";
	return kExitReducible;
}

int run_sweep_cmd(const SweepOptions &options, const std::string &report_file)
{
	SweepReport report = run_sweep(options);
	std::cout << sweep_report_table(report);
	if (!report_file.empty())
		write_text_output(sweep_report_to_json(report), report_file);
	if (!report.resource_error.empty()) {
		std::cerr << "resource bound exceeded: " << report.resource_error << "\n";
		return kExitResource;
	}
	return report.clean() ? kExitReducible : kExitNegative;
}

} // namespace

int main(int argc, char **argv)
{
	CLI::App app{"exact reducibility of binomials x^n - a over Q and Z, with verified "
	             "factorization certificates and a brute-force cross-check"};
	app.require_subcommand(1);

	InstanceArgs decide_args;
	CLI::App *cmd_decide = app.add_subcommand("decide", "decide reducibility of x^n - a");
	add_instance_options(cmd_decide, decide_args, false);

	InstanceArgs factor_args;
	bool deep = false, use_oracle = false;
	CLI::App *cmd_factor = app.add_subcommand("factor", "emit a verified factorization");
	add_instance_options(cmd_factor, factor_args, true);
	CLI::Option *deep_opt =
	    cmd_factor->add_flag("--deep", deep, "keep splitting binomial factors");
	cmd_factor->add_flag("--oracle", use_oracle, "full brute-force factorization")
	    ->excludes(deep_opt);

	InstanceArgs oracle_args;
	CLI::App *cmd_oracle =
	    app.add_subcommand("oracle-factor", "brute-force factorization into irreducibles");
	add_instance_options(cmd_oracle, oracle_args, true);

	unsigned long cyclotomic_index = 1;
	CLI::App *cmd_cyclo = app.add_subcommand("cyclotomic", "print the n-th cyclotomic polynomial");
	cmd_cyclo->add_option("n", cyclotomic_index, "index (>= 1)")
	    ->required()
	    ->check(CLI::PositiveNumber);

	std::string verify_in;
	CLI::App *cmd_verify = app.add_subcommand("verify", "check a certificate document");
	cmd_verify->add_option("--in", verify_in, "certificate JSON file")->required();

	SweepOptions sweep_options;
	std::string report_file;
	CLI::App *cmd_sweep =
	    app.add_subcommand("sweep", "criterion vs oracle over a grid, plus lemma checks");
	cmd_sweep->add_option("--n-min", sweep_options.n_min, "smallest degree");
	cmd_sweep->add_option("--n-max", sweep_options.n_max, "largest degree (<= 24)");
	cmd_sweep->add_option("--a-max", sweep_options.a_max, "grid is a in [-a_max, a_max] \\ {0}");
	cmd_sweep->add_option("--jobs", sweep_options.jobs, "worker threads");
	cmd_sweep->add_option("--trial-bound", sweep_options.trial_bound, "trial division bound");
	cmd_sweep->add_option("--report", report_file, "write the JSON report to FILE");
	bool no_lemmas = false;
	cmd_sweep->add_flag("--no-lemmas", no_lemmas, "skip the lemma checkers");

	try {
		app.parse(argc, argv);
	} catch (const CLI::ParseError &e) {
		if (e.get_exit_code() == 0) { // --help
			app.exit(e);
			return 0;
		}
		std::cerr << e.what() << "\n";
		return kExitUsage;
	}

	try {
		if (cmd_decide->parsed())
			return run_decide(decide_args);
		if (cmd_factor->parsed())
			return run_factor(factor_args, deep, use_oracle);
		if (cmd_oracle->parsed())
			return run_oracle_factor(oracle_args);
		if (cmd_cyclo->parsed())
			return run_cyclotomic(cyclotomic_index);
		if (cmd_verify->parsed())
			return run_verify(verify_in);
		if (cmd_sweep->parsed()) {
			sweep_options.run_lemma_checks = !no_lemmas;
			return run_sweep_cmd(sweep_options, report_file);
		}
	} catch (const parse_error &e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitUsage;
	} catch (const factor_bound_error &e) {
		std::cerr << "resource bound exceeded: " << e.what() << "\n";
		return kExitResource;
	} catch (const std::invalid_argument &e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitUsage;
	} catch (const std::exception &e) {
		std::cerr << "error: " << e.what() << "\n";
		return kExitResource;
	}
	return kExitUsage;
}
