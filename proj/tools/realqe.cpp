#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "realqe/answers.hpp"
#include "realqe/oracle.hpp"

using json = nlohmann::json;
using namespace realqe;

namespace {

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;
constexpr int kExitKernel = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ParameterAssignment parse_fixes(const std::vector<std::string>& fixes) {
    ParameterAssignment a;
    for (const auto& fix : fixes) {
        auto eq = fix.find('=');
        if (eq == std::string::npos)
            throw UsageError("--fix expects VAR=RATIONAL, got: " + fix);
        std::string var = fix.substr(0, eq);
        auto value = parse_rational(fix.substr(eq + 1));
        if (var.empty() || !value)
            throw UsageError("--fix expects VAR=RATIONAL, got: " + fix);
        a[var] = *value;
    }
    return a;
}

void dump_trace(std::ostream& out, const PreEQR& p) {
    out << ";; pre-EQR: " << p.rows.size() << " row(s)\n";
    for (size_t i = 0; i < p.rows.size(); ++i) {
        const auto& row = p.rows[i];
        out << ";; row " << i + 1 << ": condition " << print_formula(row.condition) << "\n";
        for (size_t k = 0; k < row.entries.size(); ++k) {
            const auto& e = row.entries[k];
            out << ";;   " << e.var << " := " << e.point.to_string() << "   guard "
                << print_formula(e.guard) << "\n";
            out << ";;   phi_" << k + 2 << " = " << print_formula(row.trace[k + 1]) << "\n";
        }
    }
}

json answer_value_json(const StandardAnswer& ans, unsigned digits) {
    json v;
    if (ans.rational) {
        v["exact"] = to_string(*ans.rational);
    } else {
        const auto& ran = ans.value;
        v["exact"] = ran.to_string();
        json defining = json::array();
        for (const auto& c : ran.defining().coeffs()) defining.push_back(to_string(c));
        v["defining"] = defining;
        v["interval"] = json::array({to_string(ran.lo()), to_string(ran.hi())});
    }
    v["approx"] = approx_decimal(ans.value, digits);
    return v;
}

// Accepts a rational string or an object with "defining" (coefficients,
// ascending) and "interval".
RealAlgebraicNumber value_from_json(const json& v) {
    if (v.is_string()) {
        auto q = parse_rational(v.get<std::string>());
        if (!q) throw UsageError("bad rational in answers file: " + v.get<std::string>());
        return RealAlgebraicNumber::from_rational(*q);
    }
    if (v.is_object()) {
        if (v.contains("defining") && v.contains("interval")) {
            std::vector<Int> coeffs;
            for (const auto& c : v["defining"]) coeffs.emplace_back(c.get<std::string>(), 10);
            auto lo = parse_rational(v["interval"][0].get<std::string>());
            auto hi = parse_rational(v["interval"][1].get<std::string>());
            if (!lo || !hi) throw UsageError("bad interval in answers file");
            return RealAlgebraicNumber::from_root(UniPoly(std::move(coeffs)), *lo, *hi);
        }
        if (v.contains("exact")) return value_from_json(v["exact"]);
    }
    throw UsageError("bad answer value in answers file");
}

int run_qe(const ExistsBlock& f, bool as_json, bool trace) {
    PreEQR p = eliminate(f);
    if (trace) dump_trace(std::cout, p);
    std::vector<QFFormula> conds;
    for (const auto& row : p.rows) conds.push_back(row.condition);
    QFFormula result = simplify(QFFormula::disj(std::move(conds)));
    bool closed = f.parameters().empty();
    if (as_json) {
        json out;
        if (result.is_true() || result.is_false())
            out["result"] = result.is_true() ? "true" : "false";
        else
            out["result"] = "formula";
        out["formula"] = print_formula(result);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << print_formula(result) << "\n";
    }
    if (closed) return result.is_true() ? kExitTrue : kExitFalse;
    return kExitTrue;
}

int run_eqr(const ExistsBlock& f, bool as_json, bool trace) {
    PreEQR p = eliminate(f);
    if (trace) dump_trace(std::cout, p);
    EQR eqr = back_substitute(p);
    if (as_json) {
        json rows = json::array();
        for (const auto& row : eqr.rows) {
            json r;
            r["condition"] = print_formula(row.condition);
            json answers;
            for (const auto& [var, expr] : row.answers) answers[var]["exact"] = expr.to_string();
            r["answers"] = answers;
            rows.push_back(r);
        }
        json out;
        out["result"] = eqr.rows.empty() ? "false" : "eqr";
        out["rows"] = rows;
        std::cout << out.dump(2) << "\n";
    } else {
        if (eqr.rows.empty()) std::cout << "[ ]  ; empty scheme, formula is false\n";
        for (size_t i = 0; i < eqr.rows.size(); ++i) {
            const auto& row = eqr.rows[i];
            std::cout << "row " << i + 1 << ": " << print_formula(row.condition) << "\n";
            for (const auto& [var, expr] : row.answers)
                std::cout << "  " << var << " = " << expr.to_string() << "\n";
        }
    }
    if (f.parameters().empty()) return eqr.rows.empty() ? kExitFalse : kExitTrue;
    return kExitTrue;
}

int run_stdans(const ExistsBlock& original, const ParameterAssignment& fixes, bool all_rows,
               unsigned digits, bool as_json, bool nudge, bool trace) {
    ExistsBlock f = fix_parameters(original, fixes);
    auto params = f.parameters();
    if (!params.empty()) {
        std::vector<std::string> names(params.begin(), params.end());
        throw PreconditionParametricError(names);
    }
    PreEQR p = eliminate(f);
    if (trace) dump_trace(std::cout, p);
    std::vector<size_t> row_indices;
    if (all_rows) {
        for (size_t i = 0; i < p.rows.size(); ++i)
            if (p.rows[i].condition.is_true()) row_indices.push_back(i);
        if (row_indices.empty()) throw AllRowsFalseError();
    } else {
        row_indices.push_back(pick_row(p));
    }
    StandardAnswerOptions opts;
    opts.nudge = nudge;
    // Quantified variables fixed in advance are reported back as answers.
    std::vector<std::pair<std::string, Rational>> fixed_quantified;
    for (const auto& q : original.quantified)
        if (fixes.count(q)) fixed_quantified.emplace_back(q, fixes.at(q));

    json rows = json::array();
    bool any = false;
    for (size_t idx : row_indices) {
        StandardRow s = standard_answers(p, idx, opts);
        any = true;
        if (as_json) {
            json r;
            r["condition"] = "true";
            json answers;
            for (const auto& [var, value] : fixed_quantified) {
                answers[var]["exact"] = to_string(value);
                answers[var]["approx"] =
                    approx_decimal(RealAlgebraicNumber::from_rational(value), digits);
            }
            for (const auto& [var, ans] : s.answers)
                answers[var] = answer_value_json(ans, digits);
            r["answers"] = answers;
            rows.push_back(r);
        } else {
            std::cout << "row " << idx + 1 << ": true\n";
            for (const auto& [var, value] : fixed_quantified)
                std::cout << "  " << var << " = " << to_string(value) << "  (fixed)\n";
            for (const auto& [var, ans] : s.answers) {
                std::cout << "  " << var << " = ";
                if (ans.rational)
                    std::cout << to_string(*ans.rational);
                else
                    std::cout << ans.expr.to_string() << " = " << ans.value.to_string();
                std::cout << "   ~ " << approx_decimal(ans.value, digits) << "\n";
            }
        }
    }
    if (as_json) {
        json out;
        out["result"] = "true";
        out["rows"] = rows;
        std::cout << out.dump(2) << "\n";
    }
    return any ? kExitTrue : kExitFalse;
}

int run_check(const ExistsBlock& original, const ParameterAssignment& fixes,
              const std::string& answers_path) {
    ExistsBlock f = fix_parameters(original, fixes);
    json doc = json::parse(read_file(answers_path));
    std::vector<json> rows;
    if (doc.contains("rows"))
        for (const auto& r : doc["rows"]) rows.push_back(r.contains("answers") ? r["answers"] : r);
    else
        rows.push_back(doc);
    if (rows.empty()) throw UsageError("answers file contains no rows");
    auto needed = f.matrix.variables();
    bool all_ok = true;
    for (size_t i = 0; i < rows.size(); ++i) {
        std::map<std::string, RealAlgebraicNumber> assignment;
        for (const auto& [var, value] : rows[i].items())
            assignment.emplace(var, value_from_json(value));
        for (const auto& [var, value] : fixes)
            assignment.emplace(var, RealAlgebraicNumber::from_rational(value));
        for (const auto& v : needed)
            if (!assignment.count(v))
                throw UsageError("answers file gives no value for variable " + v);
        bool ok = check_satisfaction(f.matrix, assignment);
        all_ok = all_ok && ok;
        std::cout << "row " << i + 1 << ": " << (ok ? "accepted" : "rejected") << "\n";
    }
    return all_ok ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extended real quantifier elimination with standard answers"};
    app.require_subcommand(1);

    std::string file;
    std::vector<std::string> fixes;
    bool as_json = false, trace = false, all_rows = false, nudge = false;
    unsigned digits = 6;
    std::string answers_path;

    auto add_common = [&](CLI::App* cmd, bool with_answers = false) {
        cmd->add_option("FILE", file, "formula file")->required();
        cmd->add_option("--fix", fixes, "fix a variable, VAR=RATIONAL");
        cmd->add_flag("--json", as_json, "JSON output");
        cmd->add_flag("--trace", trace, "dump the pre-EQR (entries, guards, phi chain)");
        if (with_answers)
            cmd->add_option("--answers", answers_path, "answers file (JSON)")->required();
    };

    CLI::App* qe_cmd = app.add_subcommand("qe", "quantifier-free equivalent");
    add_common(qe_cmd);
    CLI::App* eqr_cmd = app.add_subcommand("eqr", "extended QE result with answers");
    add_common(eqr_cmd);
    CLI::App* stdans_cmd = app.add_subcommand("stdans", "standard answers (parameters fixed)");
    add_common(stdans_cmd);
    stdans_cmd->add_flag("--all-rows", all_rows, "answers for every true row");
    stdans_cmd->add_flag("--nudge", nudge, "try root -+ eps replacements for rational answers");
    stdans_cmd->add_option("--digits", digits, "fractional digits of the decimal approximation")
        ->check(CLI::Range(1u, 1000u));
    CLI::App* check_cmd = app.add_subcommand("check", "verify an answers file against the formula");
    add_common(check_cmd, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        ExistsBlock f = parse_formula(read_file(file));
        ParameterAssignment fix_map = parse_fixes(fixes);
        if (qe_cmd->parsed()) return run_qe(fix_parameters(f, fix_map), as_json, trace);
        if (eqr_cmd->parsed()) return run_eqr(fix_parameters(f, fix_map), as_json, trace);
        if (stdans_cmd->parsed())
            return run_stdans(f, fix_map, all_rows, digits, as_json, nudge, trace);
        if (check_cmd->parsed()) return run_check(f, fix_map, answers_path);
        return kExitUsage;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const json::exception& e) {
        std::cerr << "error: bad answers file: " << e.what() << "\n";
        return kExitUsage;
    } catch (const AllRowsFalseError&) {
        std::cout << "false\n";
        return kExitFalse;
    } catch (const PreconditionParametricError& e) {
        std::cerr << "error: " << e.what() << ":";
        for (const auto& v : e.parameters) std::cerr << " " << v;
        std::cerr << " (use --fix)\n";
        return kExitKernel;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitKernel;
    }
}
