#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "cfes/cf.hpp"
#include "cfes/dimension.hpp"
#include "cfes/enumerate.hpp"
#include "cfes/error_sum.hpp"
#include "cfes/interval.hpp"
#include "cfes/series.hpp"
#include "cfes/verify.hpp"

using json = nlohmann::ordered_json;
using namespace cfes;

namespace {

struct GlobalOpts {
    std::string output;
    std::string format = "csv";
    unsigned threads = 1;
    unsigned precision = 128;
    bool no_meta = false;
};

std::string timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

struct Out {
    std::ostream* os;
    std::unique_ptr<std::ofstream> file;
    explicit Out(const std::string& path) {
        if (path.empty()) {
            os = &std::cout;
        } else {
            file = std::make_unique<std::ofstream>(path);
            if (!*file) throw std::runtime_error("cannot open output file: " + path);
            os = file.get();
        }
    }
};

std::string decimal(const Rational& x) {
    return BigFloat::of(x, MPFR_RNDN, 128).str(17);
}

ErrorSumKind parse_kind(const std::string& name) {
    if (name == "E") return ErrorSumKind::unweighted;
    if (name == "P") return ErrorSumKind::relative;
    throw std::domain_error("function must be E or P");
}

void emit_interval_row(std::ostream& os, const FundamentalInterval& iv) {
    const ConvergentTable t = convergent_table(iv.sigma);
    long n = static_cast<long>(t.levels());
    os << '"' << iv.sigma.str() << "\"," << n << ',' << t.q_at(n).get_str() << ','
       << t.q_at(n - 1).get_str() << ',' << to_string(iv.left) << ',' << to_string(iv.right)
       << ',' << to_string(iv.length) << '\n';
}

int cmd_expand(const GlobalOpts& g, const std::string& xtext) {
    Out out(g.output);
    Rational x = parse_rational(xtext);
    Rational fx = fractional_part(x);
    if (fx != x)
        *out.os << "reduced: " << to_string(x) << " -> " << to_string(fx) << " (period 1)\n";
    DigitString sigma = expand_rational(fx);
    if (sigma.empty()) {
        *out.os << "digits: (empty)\n";
        return 0;
    }
    ConvergentTable t = convergent_table(sigma);
    std::string qs, ps;
    for (long k = 0; k <= static_cast<long>(t.levels()); ++k) {
        if (k) {
            qs += ',';
            ps += ',';
        }
        qs += t.q_at(k).get_str();
        ps += t.p_at(k).get_str();
    }
    *out.os << "digits: " << sigma.str();
    if (sigma != DigitString::parse("1")) *out.os << " | sibling: " << sibling(sigma).str();
    *out.os << " | q: " << qs << '\n';
    *out.os << "p: " << ps << '\n';
    *out.os << "realizable: " << (is_realizable(sigma) ? "yes" : "no") << '\n';
    *out.os << "value: " << to_string(fx) << '\n';
    return 0;
}

int cmd_eval(const GlobalOpts& g, const std::string& fn, const std::string& at,
             const std::string& tol) {
    Out out(g.output);
    ErrorSumKind kind = parse_kind(fn);
    Rational x = parse_rational(at);
    if (tol.empty()) {
        *out.os << to_string(error_sum_at(kind, x)) << '\n';
        return 0;
    }
    BigFloat tolerance(g.precision);
    if (mpfr_set_str(tolerance.get(), tol.c_str(), 10, MPFR_RNDU) != 0)
        throw std::domain_error("cannot parse tolerance '" + tol + "'");
    Rational fx = fractional_part(x);
    RealInterval iv = RealInterval::of(fx, g.precision);
    ErrorSumValue v = error_sum_real(kind, iv, tolerance);
    if (v.exact) {
        *out.os << to_string(v.exact_value) << '\n';
    } else {
        *out.os << v.value.str(25) << "±" << v.radius.str(6) << '\n';
        if (v.status == DigitStatus::out_of_precision)
            *out.os << "precision exhausted after " << v.terms_used
                    << " digits; enclosure is wider than requested\n";
    }
    return 0;
}

int cmd_interval(const GlobalOpts& g, const std::string& sigma_csv) {
    Out out(g.output);
    DigitString sigma = DigitString::parse(sigma_csv);
    FundamentalInterval iv = fundamental_interval(sigma);
    if (!g.no_meta) *out.os << "# generated " << timestamp() << '\n';
    *out.os << "sigma,n,q_n,q_prev,left,right,length\n";
    emit_interval_row(*out.os, iv);
    return 0;
}

int cmd_enumerate(const GlobalOpts& g, unsigned long length, unsigned long cap,
                  unsigned long cutoff) {
    Out out(g.output);
    if (!g.no_meta) *out.os << "# generated " << timestamp() << '\n';
    *out.os << "sigma,n,q_n,q_prev,left,right,length\n";
    if (cutoff > 0) {
        DenominatorBoundedEnumerator en(cutoff);
        EnumeratedString item;
        while (en.next(item)) emit_interval_row(*out.os, fundamental_interval(item.sigma));
    } else {
        if (length == 0 || cap == 0)
            throw std::domain_error("enumerate needs --cutoff or both --length and --cap");
        FixedLengthEnumerator en(length, cap);
        DigitString sigma;
        while (en.next(sigma)) emit_interval_row(*out.os, fundamental_interval(sigma));
    }
    return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& suite, uint64_t seed,
               unsigned long cutoff, const std::string& eps_text) {
    Out out(g.output);
    if (!g.no_meta) *out.os << "# generated " << timestamp() << '\n';
    std::vector<CheckResult> results;
    std::string header = "suite " + suite;
    if (suite == "lemmas") {
        header += " seed=" + std::to_string(seed) + " strings=1000";
        results = verify_lemmas(seed, 1000, g.threads);
    } else if (suite == "conversion") {
        header += " cutoff=" + std::to_string(cutoff);
        results = verify_conversion(cutoff);
    } else if (suite == "bounds") {
        Rational eps = parse_rational(eps_text);
        header += " epsilon=" + to_string(eps);
        results = verify_bounds(eps, g.threads);
    } else {
        throw std::domain_error("suite must be lemmas, conversion, or bounds");
    }
    *out.os << header << '\n';
    size_t passed = 0;
    for (const auto& r : results) {
        *out.os << r.name << ": " << (r.pass ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
        if (r.pass) ++passed;
    }
    *out.os << "suite " << suite << ": " << (passed == results.size() ? "PASS" : "FAIL") << " ("
            << passed << "/" << results.size() << " checks)\n";
    return passed == results.size() ? 0 : 2;
}

int cmd_series(const GlobalOpts& g, const std::string& weight, const std::string& eps_text,
               unsigned long cutoff, unsigned long level_cap, unsigned long levels) {
    Out out(g.output);
    ErrorSumKind kind = parse_kind(weight);
    Rational eps = parse_rational(eps_text);
    SeriesOptions opt;
    opt.threads = g.threads;
    opt.prec = g.precision;
    opt.level_digit_cap = level_cap;
    opt.level_count = levels;
    SeriesReport rep = series_partial(kind, eps, cutoff, opt);

    if (g.format == "json") {
        json j;
        j["schema"] = "cfes.series/1";
        if (!g.no_meta) j["generated"] = timestamp();
        j["weight"] = weight;
        j["epsilon"] = to_string(rep.epsilon);
        j["cutoff"] = rep.cutoff;
        j["partial_sum"] = rep.partial_hi.to_double();
        j["partial_lo"] = rep.partial_lo.to_double();
        j["bound"] = rep.bound_lo.to_double();
        j["bound_hi"] = rep.bound_hi.to_double();
        j["bound_satisfied"] = rep.bound_satisfied;
        j["near_divergence"] = rep.near_divergence;
        j["level_digit_cap"] = rep.level_digit_cap;
        json lv = json::array();
        for (const auto& l : rep.levels) lv.push_back({l.n, l.value, l.n_plus_1_times_value});
        j["levels"] = std::move(lv);
        *out.os << j.dump(2) << '\n';
    } else {
        if (!g.no_meta) *out.os << "# generated " << timestamp() << '\n';
        *out.os << "# weight=" << weight << " epsilon=" << to_string(rep.epsilon)
                << " cutoff=" << rep.cutoff << " partial_sum=" << rep.partial_hi.str(17)
                << " bound=" << rep.bound_lo.str(17)
                << " bound_satisfied=" << (rep.bound_satisfied ? "yes" : "no") << '\n';
        *out.os << "n,value,n_plus_1_times_value\n";
        char buf[64];
        for (const auto& l : rep.levels) {
            std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", l.n, l.value,
                          l.n_plus_1_times_value);
            *out.os << buf;
        }
    }
    return 0;
}

int cmd_graph(const GlobalOpts& g, const std::string& fn, unsigned long cap) {
    Out out(g.output);
    ErrorSumKind kind = parse_kind(fn);
    if (!g.no_meta) *out.os << "# generated " << timestamp() << '\n';
    *out.os << "x,y,x_decimal,y_decimal\n";
    sample_graph(kind, cap, [&](const Rational& x, const Rational& y) {
        *out.os << to_string(x) << ',' << to_string(y) << ',' << decimal(x) << ','
                << decimal(y) << '\n';
    });
    return 0;
}

int cmd_dimension(const GlobalOpts& g, const std::string& fn, unsigned long cap,
                  const std::string& scales) {
    Out out(g.output);
    ErrorSumKind kind = parse_kind(fn);
    auto colon = scales.find(':');
    if (colon == std::string::npos)
        throw std::domain_error("scales must look like 3:8 (exponents of 2^-i)");
    int lo = std::stoi(scales.substr(0, colon));
    int hi = std::stoi(scales.substr(colon + 1));
    BoxCountReport rep = estimate_dimension(kind, cap, lo, hi);
    if (rep.under_resolved)
        std::cerr << "warning: finest scale 2^-" << hi
                  << " is below the sample resolution 1/" << cap << "\n";

    json j;
    j["schema"] = "cfes.boxcount/1";
    if (!g.no_meta) j["generated"] = timestamp();
    j["function"] = fn;
    j["denominator_cap"] = cap;
    j["scale_exponents"] = rep.scale_exponents;
    j["counts"] = rep.counts;
    j["slope"] = rep.slope;
    j["residual"] = rep.residual;
    j["samples_used"] = rep.samples_used;
    j["under_resolved"] = rep.under_resolved;
    *out.os << j.dump(2) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"continued-fraction error-sum toolkit"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--output", g.output, "write results to this file (default stdout)");
    app.add_option("--format", g.format, "csv, tsv, or json")->default_str("csv");
    app.add_option("--threads", g.threads, "worker threads for enumeration/summation")
        ->default_val(1);
    app.add_option("--precision", g.precision, "working precision in bits")->default_val(128);
    app.add_flag("--no-meta", g.no_meta, "omit the timestamped metadata line");

    std::string xtext, fn = "E", tol, sigma_csv, suite, weight = "E", eps_text = "0.5",
                scales = "3:8";
    unsigned long length = 0, cap = 0, cutoff = 0, census = 200, level_cap = 20, levels = 40,
                  gcap = 100;
    uint64_t seed = 0;

    auto* expand = app.add_subcommand("expand", "CF digits of a rational");
    expand->add_option("x", xtext, "value, e.g. 3/10 or 0.3")->required();

    auto* eval = app.add_subcommand("eval", "evaluate an error-sum function");
    eval->add_option("--function", fn, "E or P")->required();
    eval->add_option("--at", xtext, "where to evaluate")->required();
    eval->add_option("--tol", tol, "tolerance: return an enclosure instead of exact value");

    auto* interval = app.add_subcommand("interval", "fundamental interval of a digit string");
    interval->add_option("--sigma", sigma_csv, "digits, e.g. 3,2,1")->required();

    auto* enumerate = app.add_subcommand("enumerate", "list digit strings and their intervals");
    enumerate->add_option("--length", length, "fixed string length");
    enumerate->add_option("--cap", cap, "digit cap for --length mode");
    enumerate->add_option("--cutoff", cutoff, "denominator cutoff mode");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "lemmas, conversion, or bounds")->required();
    verify->add_option("--seed", seed, "random seed for the lemmas suite")->default_val(0);
    verify->add_option("--cutoff", census, "census cutoff for the conversion suite")
        ->default_val(200);
    verify->add_option("--epsilon", eps_text, "epsilon for the bounds suite")
        ->default_str("0.75");

    auto* series = app.add_subcommand("series", "truncated series totals and level sums");
    series->add_option("--weight", weight, "E or P")->required();
    series->add_option("--epsilon", eps_text, "exponent parameter")->required();
    series->add_option("--cutoff", cutoff, "denominator cutoff J")->required();
    series->add_option("--level-cap", level_cap, "digit cap for per-level sums")
        ->default_val(20);
    series->add_option("--levels", levels, "number of per-level rows")->default_val(40);

    auto* graph = app.add_subcommand("graph", "exact graph sample in Farey order");
    graph->add_option("--function", fn, "E or P")->required();
    graph->add_option("--cap", gcap, "denominator cap")->required();

    auto* dimension = app.add_subcommand("dimension", "box-counting dimension estimate");
    dimension->add_option("--function", fn, "E or P")->required();
    dimension->add_option("--cap", gcap, "denominator cap")->required();
    dimension->add_option("--scales", scales, "dyadic exponent range, e.g. 3:8")
        ->default_str("3:8");

    for (auto* sc : app.get_subcommands(nullptr)) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (g.format != "csv" && g.format != "tsv" && g.format != "json")
            throw std::domain_error("format must be csv, tsv, or json");
        if (g.precision < 16 || g.precision > 1u << 20)
            throw std::domain_error("precision out of range");
        if (expand->parsed()) return cmd_expand(g, xtext);
        if (eval->parsed()) return cmd_eval(g, fn, xtext, tol);
        if (interval->parsed()) return cmd_interval(g, sigma_csv);
        if (enumerate->parsed()) return cmd_enumerate(g, length, cap, cutoff);
        if (verify->parsed()) return cmd_verify(g, suite, seed, census, eps_text);
        if (series->parsed()) return cmd_series(g, weight, eps_text, cutoff, level_cap, levels);
        if (graph->parsed()) return cmd_graph(g, fn, gcap);
        if (dimension->parsed()) return cmd_dimension(g, fn, gcap, scales);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
