// Command-line front end: kernel tables, verification sweeps, the blow-up
// experiment, and the boundedness sweep, with deterministic file outputs.
//
// Exit codes: 0 success, 1 verification failure, 2 precondition refusal,
// 64 usage error.

#include "wf/dyadic_index.hpp"
#include "wf/frozen.hpp"
#include "wf/kernels.hpp"
#include "wf/maxop.hpp"
#include "wf/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

// "a..b" inclusive.
std::pair<unsigned, unsigned> parse_scale_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos)
        throw CLI::ValidationError("--scales", "expected a range like 4..10");
    try {
        const unsigned a = static_cast<unsigned>(std::stoul(text.substr(0, dots)));
        const unsigned b = static_cast<unsigned>(std::stoul(text.substr(dots + 2)));
        if (a > b) throw CLI::ValidationError("--scales", "range is reversed");
        return {a, b};
    } catch (const std::invalid_argument&) {
        throw CLI::ValidationError("--scales", "expected a range like 4..10");
    }
}

// Stream sink: --output file when given, stdout otherwise.
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw std::domain_error("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct KernelArgs {
    std::string kind = "fejer";
    std::uint64_t n = 1;
    unsigned resolution = 4;
    std::string output;
};

int run_kernel(const KernelArgs& args) {
    OutputTarget out(args.output);
    if (args.kind == "dirichlet")
        wf::dirichlet(args.n, args.resolution).write_csv(out.stream());
    else if (args.kind == "fejer")
        wf::fejer(args.n, args.resolution).write_csv(out.stream());
    else
        throw std::domain_error("unknown kernel kind '" + args.kind + "'");
    return 0;
}

struct VerifyArgs {
    std::string check = "all";
    std::uint64_t max_n = 1024;
    unsigned max_m = 12;
    std::string constant;  // rational text; empty = use the frozen constant
    std::string output;
    std::string format = "json";
};

std::vector<wf::VerificationReport> run_checks(const VerifyArgs& args) {
    std::optional<wf::Rational> constant;
    if (!args.constant.empty()) constant = wf::parse_rational(args.constant);

    std::vector<wf::VerificationReport> reports;
    auto want = [&args](const char* name) { return args.check == "all" || args.check == name; };

    if (want("1dn")) reports.push_back(wf::verify_pow2_dirichlet(wf::top_bit(args.max_n)));
    if (want("lemma2")) reports.push_back(wf::verify_pow2_fejer_sweep(args.max_m));
    if (want("9a")) reports.push_back(wf::verify_block_decomposition_sweep(args.max_n));
    if (want("sumdk")) reports.push_back(wf::verify_dirichlet_sum(args.max_n));
    if (want("integrals")) reports.push_back(wf::verify_integrals(args.max_n));
    if (want("prop1")) {
        wf::LowerBoundResult r = wf::check_lower_bound_sweep(1, args.max_n, wf::LowerBound::gap_pair);
        std::cerr << "note: stronger exponent 2t-1 held on all gap regions: "
                  << (r.stronger_gap_bound ? "yes" : "no") << "\n";
        reports.push_back(std::move(r.report));
    }
    if (want("lemma5a"))
        reports.push_back(wf::check_lower_bound_sweep(1, args.max_n, wf::LowerBound::edge_pair).report);
    if (want("cor1"))
        reports.push_back(wf::check_lower_bound_sweep(1, args.max_n, wf::LowerBound::relaxed_pair).report);
    if (want("prop2"))
        reports.push_back(wf::check_upper_bound_sweep(
            1, args.max_n, constant ? constant : std::optional<wf::Rational>(wf::frozen::kUpperBoundConstant)));
    if (want("lemma4"))
        reports.push_back(wf::tail_integral_sweep(
            3, std::max(3u, std::min(args.max_m, 5u)), 0,
            constant ? constant : std::optional<wf::Rational>(wf::frozen::kTailIntegralConstant)));
    if (reports.empty()) throw std::domain_error("unknown check '" + args.check + "'");
    return reports;
}

int run_verify(const VerifyArgs& args) {
    const std::vector<wf::VerificationReport> reports = run_checks(args);
    bool all_pass = true;
    for (const wf::VerificationReport& rep : reports) {
        std::cerr << rep.summary() << "\n";
        all_pass = all_pass && rep.pass;
    }
    OutputTarget out(args.output);
    if (args.format == "json") {
        nlohmann::ordered_json j = nlohmann::ordered_json::array();
        for (const wf::VerificationReport& rep : reports) j.push_back(rep.to_json());
        out.stream() << j.dump(2) << "\n";
    } else if (args.format == "csv") {
        out.stream() << "check,range_lo,range_hi,resolution,worst_ratio,witness_n,witness_coset,"
                        "constant,pass\n";
        for (const wf::VerificationReport& rep : reports) {
            out.stream() << rep.check << ',' << rep.range_lo << ',' << rep.range_hi << ','
                         << rep.resolution << ',';
            if (rep.worst_ratio_exact)
                out.stream() << rep.worst_ratio_exact->get_num().get_str() << '/'
                             << rep.worst_ratio_exact->get_den().get_str();
            else if (rep.worst_ratio_float) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.17g", *rep.worst_ratio_float);
                out.stream() << buf;
            }
            out.stream() << ',' << rep.witness_n << ',' << rep.witness_coset << ',';
            if (rep.constant)
                out.stream() << rep.constant->get_num().get_str() << '/'
                             << rep.constant->get_den().get_str();
            out.stream() << ',' << (rep.pass ? 1 : 0) << '\n';
        }
    } else {
        throw std::domain_error("unknown format '" + args.format + "'");
    }
    return all_pass ? 0 : 1;
}

struct BlowupArgs {
    std::string family = "beta";
    std::string scales = "4..10";
    std::string output;
};

int run_blowup(const BlowupArgs& args) {
    const auto [lo, hi] = parse_scale_range(args.scales);
    const wf::IndexFamily fam = wf::family_from_name(args.family);
    const wf::BlowupReport report = wf::blowup_experiment(fam, lo, hi);
    OutputTarget out(args.output);
    report.write_csv(out.stream());
    std::cerr << report.summary().to_json().dump() << "\n";
    return report.pass ? 0 : 1;
}

struct BoundednessArgs {
    std::string family = "powers_plus_one";
    std::string scales;
    std::uint64_t seeds = 100;
    unsigned support_level = 5;
    std::string constant;  // float text; empty = frozen per family
    std::string output;
};

double frozen_statistic_bound(const wf::IndexFamily& fam) {
    switch (fam.kind) {
        case wf::IndexFamily::Kind::powers: return wf::frozen::kAtomStatisticPowers;
        case wf::IndexFamily::Kind::powers_plus_one: return wf::frozen::kAtomStatisticPowersPlusOne;
        case wf::IndexFamily::Kind::powers_plus_halfpower:
            return wf::frozen::kAtomStatisticPowersPlusHalfpower;
        default:
            throw std::domain_error("no frozen statistic bound for family '" + wf::family_name(fam) +
                                    "'; pass --constant");
    }
}

int run_boundedness(const BoundednessArgs& args) {
    const wf::IndexFamily fam = wf::family_from_name(args.family);
    unsigned lo = args.support_level, hi = args.support_level + 2;
    if (!args.scales.empty()) std::tie(lo, hi) = parse_scale_range(args.scales);
    const double bound =
        args.constant.empty() ? frozen_statistic_bound(fam) : std::stod(args.constant);
    const wf::BoundednessReport report =
        wf::boundedness_sweep(fam, lo, hi, args.seeds, args.support_level, bound);
    OutputTarget out(args.output);
    report.write_csv(out.stream());
    std::cerr << report.summary().to_json().dump() << "\n";
    return report.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Walsh kernel tables, identity verification, and maximal-operator experiments"};
    app.require_subcommand(1);

    KernelArgs kernel_args;
    CLI::App* kernel = app.add_subcommand("kernel", "dump a kernel as CSV");
    kernel->add_option("--kind", kernel_args.kind, "dirichlet | fejer")->capture_default_str();
    kernel->add_option("--n", kernel_args.n, "kernel index")->required();
    kernel->add_option("--resolution", kernel_args.resolution, "grid resolution M")->required();
    kernel->add_option("--output", kernel_args.output, "output file (default stdout)");

    VerifyArgs verify_args;
    CLI::App* verify = app.add_subcommand("verify", "run verification sweeps");
    verify->add_option("--check", verify_args.check,
                       "1dn | lemma2 | 9a | sumdk | integrals | prop1 | lemma5a | cor1 | prop2 | "
                       "lemma4 | all")
        ->capture_default_str();
    verify->add_option("--max-n", verify_args.max_n, "sweep upper index")->capture_default_str();
    verify->add_option("--max-m", verify_args.max_m, "sweep upper resolution")->capture_default_str();
    verify->add_option("--constant", verify_args.constant,
                       "override the frozen constant (rational, e.g. 7/2 or 0.001)");
    verify->add_option("--output", verify_args.output, "report file (default stdout)");
    verify->add_option("--format", verify_args.format, "json | csv")->capture_default_str();

    BlowupArgs blowup_args;
    CLI::App* blowup = app.add_subcommand("blowup", "growth experiment for unbounded families");
    blowup->add_option("--family", blowup_args.family, "alpha | beta | custom")->capture_default_str();
    blowup->add_option("--scales", blowup_args.scales, "inclusive range a..b")->capture_default_str();
    blowup->add_option("--output", blowup_args.output, "CSV file (default stdout)");

    BoundednessArgs bounded_args;
    CLI::App* bounded = app.add_subcommand("boundedness", "atom statistic sweep for bounded families");
    bounded->add_option("--family", bounded_args.family,
                        "powers | powers_plus_one | powers_plus_halfpower")
        ->capture_default_str();
    bounded->add_option("--scales", bounded_args.scales, "member scales a..b (default m..m+2)");
    bounded->add_option("--seeds", bounded_args.seeds, "number of seeded atoms")->capture_default_str();
    bounded->add_option("--m", bounded_args.support_level, "atom support level")->capture_default_str();
    bounded->add_option("--constant", bounded_args.constant, "override the frozen bound (float)");
    bounded->add_option("--output", bounded_args.output, "CSV file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (kernel->parsed()) return run_kernel(kernel_args);
        if (verify->parsed()) return run_verify(verify_args);
        if (blowup->parsed()) return run_blowup(blowup_args);
        if (bounded->parsed()) return run_boundedness(bounded_args);
    } catch (const CLI::ParseError& e) {  // malformed option values, e.g. --scales
        std::cerr << e.what() << "\n";
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    }
    return 64;
}
