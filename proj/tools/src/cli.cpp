#include "qfdensity/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qfdensity/arith.hpp"
#include "qfdensity/class_group.hpp"
#include "qfdensity/genus_series.hpp"
#include "qfdensity/harness.hpp"
#include "qfdensity/lfunctions.hpp"
#include "qfdensity/qf_sieve.hpp"

namespace qfd::cli {

namespace {

using harness::OutputFormat;

// Accepts plain integers and the shorthand "1e6".
std::uint64_t parse_count(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty numeric argument");
    const auto e = text.find_first_of("eE");
    std::size_t used = 0;
    if (e == std::string::npos) {
        const unsigned long long v = std::stoull(text, &used);
        if (used != text.size() || text[0] == '-') throw std::invalid_argument("not a count: " + text);
        return v;
    }
    const std::uint64_t mantissa = parse_count(text.substr(0, e));
    const std::uint64_t exponent = parse_count(text.substr(e + 1));
    std::uint64_t v = mantissa;
    for (std::uint64_t i = 0; i < exponent; ++i) {
        if (v > UINT64_MAX / 10) throw std::invalid_argument("count out of range: " + text);
        v *= 10;
    }
    return v;
}

std::vector<std::uint64_t> parse_counts(const std::vector<std::string>& texts) {
    std::vector<std::uint64_t> out;
    for (const auto& t : texts) out.push_back(parse_count(t));
    return out;
}

struct Common {
    unsigned shards = 1;
    std::uint64_t segment_width = std::uint64_t{1} << 24;
    std::string format = "csv";

    SieveOptions sieve() const { return {shards, segment_width}; }
};

void add_common(CLI::App* sub, Common& c, bool with_format = true) {
    sub->add_option("--shards", c.shards, "worker threads per segment")->check(CLI::PositiveNumber);
    sub->add_option("--segment-width", c.segment_width, "n-values per sieve segment")
        ->check(CLI::PositiveNumber);
    if (with_format) sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

void validate(const std::vector<std::uint64_t>& bounds, double cutoff, unsigned shards) {
    harness::ExperimentConfig cfg;
    cfg.bounds = bounds;
    cfg.cutoff = cutoff;
    cfg.shards = shards;
    cfg.validate();
}

SubsetSpec subset_from(const std::string& kind, unsigned stride) {
    if (kind == "all") return SubsetSpec::all_primes();
    return SubsetSpec::thinned(stride);
}

std::string cache_dir(const std::string& flag) {
    if (!flag.empty()) return flag;
    if (const char* env = std::getenv("QFD_CACHE_DIR")) return env;
    return {};
}

RepTable cached_table(std::uint64_t bound, const DiagonalForm& form, const SieveOptions& opts,
                      const std::string& dir) {
    if (dir.empty()) return rep_counts(bound, form, opts);
    const std::filesystem::path path =
        std::filesystem::path(dir) / ("rep_z" + std::to_string(form.z()) + "_x" + std::to_string(bound) + ".qfrt");
    if (std::filesystem::exists(path)) {
        RepTable t = load_rep_table(path.string());
        if (t.bound() == bound && t.form() == form) return t;
    }
    RepTable t = rep_counts(bound, form, opts);
    std::filesystem::create_directories(dir);
    save_rep_table(path.string(), t);
    return t;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Representation densities of diagonal binary quadratic forms"};
    app.name("qfd");
    app.require_subcommand(1);
    std::vector<std::pair<CLI::App*, std::function<void()>>> actions;

    // sieve
    Common sieve_c;
    std::uint64_t sieve_z = 0;
    std::string sieve_x, sieve_out, sieve_cache;
    auto* sieve = app.add_subcommand("sieve", "r(n, z) for n <= X");
    sieve->add_option("--z", sieve_z, "z in W")->required();
    sieve->add_option("--x", sieve_x, "bound X")->required();
    sieve->add_option("--out", sieve_out, "output file (stdout if omitted)");
    sieve->add_option("--cache-dir", sieve_cache, "table cache (default $QFD_CACHE_DIR)");
    add_common(sieve, sieve_c, false);
    sieve->add_option("--format", sieve_c.format, "csv or bin")->check(CLI::IsMember({"csv", "bin"}));
    actions.emplace_back(sieve, [&] {
        const DiagonalForm form(sieve_z);
        const std::uint64_t x = parse_count(sieve_x);
        validate({x}, 0, sieve_c.shards);
        const RepTable table = cached_table(x, form, sieve_c.sieve(), cache_dir(sieve_cache));
        if (sieve_c.format == "bin") {
            if (sieve_out.empty()) throw std::invalid_argument("--format bin needs --out");
            save_rep_table(sieve_out, table);
        } else if (sieve_out.empty()) {
            write_rep_table_csv(out, table);
        } else {
            std::ofstream f(sieve_out);
            if (!f) throw std::runtime_error("cannot open " + sieve_out);
            write_rep_table_csv(f, table);
        }
    });

    // union
    Common union_c;
    std::vector<std::uint64_t> union_z;
    std::string union_x;
    auto* uni = app.add_subcommand("union", "number of n <= X represented by any of the forms");
    uni->add_option("--z", union_z, "one or more z in W")->required();
    uni->add_option("--x", union_x, "bound X")->required();
    add_common(uni, union_c);
    actions.emplace_back(uni, [&] {
        std::vector<DiagonalForm> forms;
        for (auto z : union_z) forms.emplace_back(z);
        const std::uint64_t x = parse_count(union_x);
        validate({x}, 0, union_c.shards);
        const std::uint64_t n = union_count(x, forms, union_c.sieve());
        if (harness::parse_format(union_c.format) == OutputFormat::csv) {
            out << "X,N\n" << x << ',' << n << '\n';
        } else {
            out << nlohmann::json{{"X", x}, {"z", union_z}, {"N", n}}.dump(2) << '\n';
        }
    });

    // moments
    Common mom_c;
    std::string mom_x, mom_subset = "all";
    double mom_z = 0;
    unsigned mom_stride = 2;
    auto* mom = app.add_subcommand("moments", "first and second moments of R(n) over p = 1 (mod 4), p <= Z");
    mom->add_option("--x", mom_x, "bound X")->required();
    mom->add_option("--z", mom_z, "prime cutoff Z")->required();
    mom->add_option("--subset", mom_subset, "all or thinned")->check(CLI::IsMember({"all", "thinned"}));
    mom->add_option("--stride", mom_stride, "keep every k-th prime when thinned")->check(CLI::PositiveNumber);
    add_common(mom, mom_c);
    actions.emplace_back(mom, [&] {
        const std::uint64_t x = parse_count(mom_x);
        validate({x}, mom_z, mom_c.shards);
        const auto primes =
            primes_1mod4(static_cast<std::uint64_t>(std::floor(mom_z)), subset_from(mom_subset, mom_stride));
        harness::write_moments(out, moment_report(x, primes, mom_c.sieve()), harness::parse_format(mom_c.format));
    });

    // prop13
    Common p13_c;
    std::uint64_t p13_z1 = 0, p13_z2 = 0;
    std::vector<std::string> p13_x;
    double p13_eps = 1e-10;
    auto* p13 = app.add_subcommand("prop13", "sum r(n,z1) r(n,z2) against its main term");
    p13->add_option("--z1", p13_z1)->required();
    p13->add_option("--z2", p13_z2)->required();
    p13->add_option("--x", p13_x, "ascending X ladder")->required()->expected(1, -1);
    p13->add_option("--eps", p13_eps, "L-value tail tolerance");
    add_common(p13, p13_c);
    actions.emplace_back(p13, [&] {
        const DiagonalForm f1(p13_z1), f2(p13_z2);
        const auto ladder = parse_counts(p13_x);
        validate(ladder, 0, p13_c.shards);
        harness::write_prop13(out, harness::verify_prop13(f1, f2, ladder, p13_eps, p13_c.sieve()),
                              harness::parse_format(p13_c.format));
    });

    // bernays
    Common bern_c;
    std::uint64_t bern_z = 0;
    std::vector<std::string> bern_x;
    auto* bern = app.add_subcommand("bernays", "N(X, {z}) sqrt(log X) / X along an X ladder");
    bern->add_option("--z", bern_z)->required();
    bern->add_option("--x", bern_x, "ascending X ladder")->required()->expected(1, -1);
    add_common(bern, bern_c);
    actions.emplace_back(bern, [&] {
        const DiagonalForm form(bern_z);
        const auto ladder = parse_counts(bern_x);
        validate(ladder, 0, bern_c.shards);
        harness::write_bernays(out, bern_z, harness::bernays_scan(form, ladder, bern_c.sieve()),
                               harness::parse_format(bern_c.format));
    });

    // density
    Common den_c;
    std::string den_x, den_policy = "paper", den_subset = "all";
    double den_z = -1;
    unsigned den_stride = 2;
    auto* den = app.add_subcommand("density", "N_Q(X, Z) with its Cauchy-Schwarz lower bound");
    den->add_option("--x", den_x, "bound X")->required();
    den->add_option("--policy", den_policy, "paper (Z = log X log log X) or explicit")
        ->check(CLI::IsMember({"paper", "explicit"}));
    den->add_option("--z", den_z, "cutoff Z for the explicit policy");
    den->add_option("--subset", den_subset, "all or thinned")->check(CLI::IsMember({"all", "thinned"}));
    den->add_option("--stride", den_stride, "keep every k-th prime when thinned")->check(CLI::PositiveNumber);
    add_common(den, den_c);
    actions.emplace_back(den, [&] {
        const std::uint64_t x = parse_count(den_x);
        harness::CutoffChoice choice = harness::CutoffChoice::paper();
        if (den_policy == "explicit") {
            if (den_z < 0) throw std::invalid_argument("--policy explicit needs --z");
            choice = harness::CutoffChoice::fixed(den_z);
        }
        const auto report = harness::density_run(x, choice, subset_from(den_subset, den_stride), den_c.sieve());
        validate({x}, report.cutoff, den_c.shards);
        harness::write_density(out, report, harness::parse_format(den_c.format));
    });

    // diagnostics
    Common diag_c;
    std::uint64_t diag_z = 0, diag_n = 0;
    auto* diag = app.add_subcommand("diagnostics", "character sums over primes p = 1 (mod 4), p <= Z");
    diag->add_option("--z", diag_z, "prime cutoff Z")->required();
    diag->add_option("--n", diag_n, "range N of odd squarefree n (default Z log Z)");
    add_common(diag, diag_c);
    actions.emplace_back(diag, [&] {
        std::uint64_t n = diag_n;
        if (n == 0 && diag_z > 1) {
            n = static_cast<std::uint64_t>(std::llround(static_cast<double>(diag_z) * std::log(diag_z)));
        }
        harness::write_diagnostics(out, harness::char_sum_diagnostics(diag_z, n),
                                   harness::parse_format(diag_c.format));
    });

    // forms
    std::int64_t forms_d = 0;
    std::uint64_t forms_z = 0;
    auto* forms = app.add_subcommand("forms", "reduced forms of a negative discriminant, CSV a,b,c");
    auto* forms_d_opt = forms->add_option("--d", forms_d, "discriminant D < 0");
    auto* forms_z_opt = forms->add_option("--z", forms_z, "use D = -4z for z in W");
    forms_d_opt->excludes(forms_z_opt);
    actions.emplace_back(forms, [&] {
        std::int64_t d = forms_d;
        if (forms_z_opt->count() > 0) d = DiagonalForm(forms_z).z_star();
        if (d == 0) throw std::invalid_argument("forms needs --d or --z");
        write_forms_csv(out, reduced_forms(d));
    });

    // lvalue
    Common lv_c;
    std::vector<std::int64_t> lv_d;
    int lv_s = 1;
    double lv_eps = 1e-10;
    std::string lv_terms;
    auto* lv = app.add_subcommand("lvalue", "L(s, chi) for a product of Kronecker characters");
    lv->add_option("--d", lv_d, "discriminants whose characters are multiplied")->required()->expected(1, -1);
    lv->add_option("--s", lv_s, "1 or 2")->check(CLI::IsMember({1, 2}));
    lv->add_option("--eps", lv_eps, "tail tolerance");
    lv->add_option("--terms", lv_terms, "fixed number of terms instead of --eps");
    lv->add_option("--format", lv_c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    actions.emplace_back(lv, [&] {
        const ProductCharacter chi(lv_d);
        const LValue v = lv_terms.empty() ? l_value(chi, lv_s, lv_eps) : l_value_terms(chi, lv_s, parse_count(lv_terms));
        harness::write_lvalue(out, chi, lv_s, v, harness::parse_format(lv_c.format));
    });

    // series
    std::uint64_t ser_z = 0;
    std::string ser_len, ser_kind = "r";
    std::int64_t ser_f = 0, ser_g = 0;
    auto* ser = app.add_subcommand("series", "Dirichlet coefficients, CSV n,a_n");
    ser->add_option("--z", ser_z, "z in W")->required();
    ser->add_option("--len", ser_len, "number of coefficients")->required();
    ser->add_option("--kind", ser_kind, "r (genus reconstruction) or genus")->check(CLI::IsMember({"r", "genus"}));
    ser->add_option("--f", ser_f, "genus character f");
    ser->add_option("--g", ser_g, "genus character g");
    actions.emplace_back(ser, [&] {
        const DiagonalForm form(ser_z);
        const std::size_t len = parse_count(ser_len);
        if (ser_kind == "r") {
            write_series_csv(out, reconstruct_r(form, len));
            return;
        }
        if (!is_genus_pair(form, ser_f, ser_g)) {
            throw std::invalid_argument("(" + std::to_string(ser_f) + ", " + std::to_string(ser_g) +
                                        ") is not a genus pair of z = " + std::to_string(ser_z));
        }
        write_series_csv(out, genus_coeffs(form, GenusPair{Discriminant(ser_f), Discriminant(ser_g)}, len));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 2;
    }

    for (auto& [sub, run] : actions) {
        if (!sub->parsed()) continue;
        try {
            run();
            return 0;
        } catch (const InvariantViolation& e) {
            err << "invariant violation: " << e.what() << '\n';
            return 3;
        } catch (const std::logic_error& e) {
            err << "error: " << e.what() << "\n\n" << sub->help();
            return 2;
        } catch (const std::exception& e) {
            err << "error: " << e.what() << '\n';
            return 1;
        }
    }
    err << app.help();
    return 2;
}

}  // namespace qfd::cli
