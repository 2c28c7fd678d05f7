#include <charconv>
#include <ostream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "qfdensity/harness.hpp"

namespace qfd::harness {

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::csv;
    if (name == "json") return OutputFormat::json;
    throw std::invalid_argument("unknown output format '" + name + "' (expected csv or json)");
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

using nlohmann::json;

json l_json(const LValue& l) {
    return {{"value", l.value},
            {"tail_bound", l.tail_bound},
            {"terms_used", l.terms_used},
            {"method", to_string(l.method)}};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

}  // namespace

void write_prop13(std::ostream& out, const Prop13Ladder& ladder, OutputFormat format) {
    if (format == OutputFormat::csv) {
        out << "z1,z2,X,lhs,main_term,abs_err,rel_err\n";
        for (const auto& r : ladder.rows) {
            out << r.z1 << ',' << r.z2 << ',' << r.bound << ',' << r.lhs << ',' << format_double(r.main_term)
                << ',' << format_double(r.abs_err) << ',' << format_double(r.rel_err) << '\n';
        }
        return;
    }
    json j;
    j["rows"] = json::array();
    for (const auto& r : ladder.rows) {
        j["rows"].push_back({{"z1", r.z1},
                             {"z2", r.z2},
                             {"X", r.bound},
                             {"lhs", r.lhs},
                             {"main_term", r.main_term},
                             {"abs_err", r.abs_err},
                             {"rel_err", r.rel_err}});
    }
    if (ladder.rows.size() >= 2) {
        j["fitted_exponent"] = ladder.fitted_exponent;
    } else {
        j["fitted_exponent"] = nullptr;
    }
    j["main_term_per_X"] = json::parse(to_json(ladder.unit_main_term));
    emit(out, j);
}

void write_bernays(std::ostream& out, std::uint64_t z, const std::vector<BernaysRow>& rows,
                   OutputFormat format) {
    if (format == OutputFormat::csv) {
        out << "X,N,kappa_hat\n";
        for (const auto& r : rows) out << r.bound << ',' << r.count << ',' << format_double(r.kappa_hat) << '\n';
        return;
    }
    json j;
    j["z"] = z;
    j["rows"] = json::array();
    for (const auto& r : rows) j["rows"].push_back({{"X", r.bound}, {"N", r.count}, {"kappa_hat", r.kappa_hat}});
    emit(out, j);
}

void write_density(std::ostream& out, const DensityReport& report, OutputFormat format) {
    if (format == OutputFormat::csv) {
        out << "X,Z,count_S,N,ratio,cs_bound\n";
        out << report.bound << ',' << format_double(report.cutoff) << ',' << report.primes.size() << ','
            << report.count << ',' << format_double(report.ratio) << ',' << format_double(report.cs_bound)
            << '\n';
        return;
    }
    emit(out, {{"X", report.bound},
               {"Z", report.cutoff},
               {"count_S", report.primes.size()},
               {"N", report.count},
               {"ratio", report.ratio},
               {"cs_bound", report.cs_bound},
               {"primes", report.primes},
               {"first_moment", report.first_moment},
               {"diagonal", report.diagonal},
               {"off_diagonal", report.off_diagonal},
               {"cauchy_schwarz_holds", report.cauchy_schwarz_holds},
               {"cutoff_in_regime", report.cutoff_in_regime}});
}

void write_moments(std::ostream& out, const MomentReport& report, OutputFormat format) {
    if (format == OutputFormat::csv) {
        out << "p,first_count,second_count\n";
        for (std::size_t i = 0; i < report.primes.size(); ++i) {
            out << report.primes[i] << ',' << report.first_counts[i] << ',' << report.pair_counts[i][i] << '\n';
        }
        return;
    }
    emit(out, {{"X", report.bound},
               {"Z", report.cutoff},
               {"primes", report.primes},
               {"first_counts", report.first_counts},
               {"pair_counts", report.pair_counts},
               {"first_moment", report.first_moment},
               {"diagonal", report.diagonal},
               {"off_diagonal", report.off_diagonal},
               {"second_moment", report.second_moment()},
               {"cs_bound", report.cs_lower_bound},
               {"N", report.union_count},
               {"cauchy_schwarz_holds", report.cauchy_schwarz_holds()},
               {"cutoff_in_regime", report.cutoff_in_regime}});
}

void write_diagnostics(std::ostream& out, const DiagnosticsReport& report, OutputFormat format) {
    if (format == OutputFormat::csv) {
        out << "n,T,orth_sum\n";
        for (const auto& r : report.rows) out << r.n << ',' << r.t << ',' << r.orth_sum << '\n';
        return;
    }
    json j;
    j["Z"] = report.cutoff;
    j["N"] = report.n_range;
    j["rows"] = json::array();
    for (const auto& r : report.rows) {
        j["rows"].push_back({{"n", r.n}, {"T", r.t}, {"orth_sum", r.orth_sum}});
    }
    j["mean_square"] = report.mean_square;
    j["pair_mean_square"] = report.pair_mean_square;
    j["heath_brown_ratio"] = report.heath_brown_ratio();
    j["elliott_ratio"] = report.elliott_ratio();
    j["orthogonality_failures"] = report.orthogonality_failures;
    j["two_way_mismatches"] = report.two_way_mismatches;
    j["reciprocity_checks"] = report.reciprocity_checks;
    j["reciprocity_failures"] = report.reciprocity_failures;
    emit(out, j);
}

void write_lvalue(std::ostream& out, const ProductCharacter& chi, int s, const LValue& value,
                  OutputFormat format) {
    if (format == OutputFormat::csv) {
        out << "s,modulus,value,tail_bound,terms_used,method\n";
        out << s << ',' << chi.modulus() << ',' << format_double(value.value) << ','
            << format_double(value.tail_bound) << ',' << value.terms_used << ',' << to_string(value.method)
            << '\n';
        return;
    }
    json j = l_json(value);
    j["s"] = s;
    j["factors"] = chi.factors();
    j["modulus"] = chi.modulus();
    emit(out, j);
}

}  // namespace qfd::harness
