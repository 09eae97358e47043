// pbwk: command-line front end for the series, algebra, representation and
// PBW computations. Exit codes: 0 all checks pass, 1 a check failed,
// 2 a required integer is not a unit of the ring, 3 malformed input.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbwk/algebra_io.hpp"
#include "pbwk/envelope.hpp"
#include "pbwk/parse.hpp"
#include "pbwk/series.hpp"
#include "pbwk/superlie.hpp"
#include "pbwk/symcoalg.hpp"

namespace {

using nlohmann::json;
using namespace pbwk;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kObstruction = 2;
constexpr int kInputError = 3;

constexpr int kDefaultDegreeLimit = 8;

/// Collects one command's result in both output formats.
struct Output {
    json doc = json::object();
    std::ostringstream text;
};

/// Option values; one subcommand runs per invocation, so fields are shared.
struct Args {
    int n = 0;
    int cap = 0;
    int cls = 0;
    int degree = 4;
    int series_cap = -1;
    std::string c, c0, ring, phi, psi, rho, file, gens, out_file, g, h, morphism, expr, kind;
};

struct Options {
    std::string output = "text";
    std::uint64_t seed = 0x5eed;
    bool unsafe_degree = false;
};

const char* status_name(int code) {
    switch (code) {
        case kPass: return "pass";
        case kFail: return "fail";
        case kObstruction: return "obstruction";
        default: return "input-error";
    }
}

void require_degree(const Options& opt, int degree, const char* what) {
    if (degree < 0) throw InputError(std::string(what) + " must be nonnegative");
    if (degree > kDefaultDegreeLimit && !opt.unsafe_degree)
        throw InputError(std::string(what) + " above " + std::to_string(kDefaultDegreeLimit) +
                         " needs --unsafe-degree");
}

RingSpec ring_or_default(const std::string& text) { return text.empty() ? default_ring() : RingSpec::parse(text); }

std::optional<RingSpec> ring_override(const std::string& text) {
    if (text.empty()) return std::nullopt;
    return RingSpec::parse(text);
}

json series_json(const TruncSeries& s) {
    json coeffs = json::array();
    for (const auto& c : s.coeffs()) coeffs.push_back(c.to_string());
    return {{"ring", s.ring().to_string()}, {"cap", s.cap()}, {"coefficients", coeffs}, {"series", s.to_string()}};
}

json report_json(const CheckReport& r) {
    json failures = json::array();
    for (const auto& f : r.failures)
        failures.push_back({{"degree", f.degree}, {"witness", f.witness}, {"detail", f.detail}});
    return {{"name", r.name}, {"passed", r.passed()}, {"checked", r.checked}, {"failures", failures}};
}

/// Per-degree table followed by the first failure, if any.
void report_text(std::ostream& os, const CheckReport& r) {
    os << r.name << ": " << (r.passed() ? "pass" : "FAIL") << "\n";
    for (std::size_t d = 0; d < r.checked.size(); ++d) {
        if (r.checked[d] == 0) continue;
        const int bad = r.failures_at(static_cast<int>(d));
        os << "  degree " << d << ": " << r.checked[d] << " checked, " << (bad ? std::to_string(bad) + " failed" : "ok")
           << "\n";
    }
    if (!r.passed()) {
        const auto& f = r.failures.front();
        os << "  first failure (degree " << f.degree << "): " << f.witness;
        if (!f.detail.empty()) os << " -> " << f.detail;
        os << "\n";
    }
}

int emit_reports(Output& out, const std::vector<CheckReport>& reports) {
    bool ok = true;
    json list = json::array();
    for (const auto& r : reports) {
        report_text(out.text, r);
        list.push_back(report_json(r));
        ok = ok && r.passed();
    }
    out.doc["checks"] = list;
    return ok ? kPass : kFail;
}

/// Series cap for a degree-D commutator check: D + 1, lowered to N - 1 on an
/// N-nilpotent algebra since higher coefficients are never consulted.
int representation_series_cap(const SuperLieAlgebra& alg, int degree) {
    int cap = degree + 1;
    if (auto n = alg.nilpotency_class()) cap = std::min(cap, std::max(*n - 1, 0));
    return cap;
}

// ------------------------------------------------------------------- series

void add_series_commands(CLI::App& app, Options& opt, Args& args, Output& out, std::function<int()>& action) {
    auto* series = app.add_subcommand("series", "Power series solving the functional equations");
    series->require_subcommand(1);

    int& n = args.n;
    int& cap = args.cap;
    std::string &c = args.c, &ring = args.ring, &phi = args.phi, &psi = args.psi, &rho = args.rho;

    auto* bern = series->add_subcommand("bernoulli", "Bernoulli numbers b_0 .. b_n");
    bern->add_option("--n", n, "Largest index")->required()->check(CLI::NonNegativeNumber);
    bern->callback([&] {
        action = [&] {
            json list = json::array();
            std::string line;
            for (const auto& b : bernoulli_numbers(n)) {
                list.push_back(b.to_string());
                line += (line.empty() ? "" : ", ") + b.to_string();
            }
            out.doc["bernoulli"] = list;
            out.text << line << "\n";
            return kPass;
        };
    });

    auto* phic = series->add_subcommand("phi", "t/(e^{t/c} - 1)");
    phic->add_option("--c", c, "Constant term c")->required();
    phic->add_option("--cap", cap, "Truncation degree")->required()->check(CLI::NonNegativeNumber);
    phic->add_option("--ring", ring, "Q, Z or Z/n");
    phic->callback([&] {
        action = [&] {
            const TruncSeries s = phi_c(parse_scalar(ring_or_default(ring), c), cap);
            out.doc["series"] = series_json(s);
            out.text << s.to_string() << "\n";
            return kPass;
        };
    });

    auto* theta = series->add_subcommand("theta", "sqrt(c) t coth(sqrt(c) t)");
    theta->add_option("--c", c, "Parameter c")->required();
    theta->add_option("--cap", cap, "Truncation degree")->required()->check(CLI::NonNegativeNumber);
    theta->add_option("--ring", ring, "Q, Z or Z/n");
    theta->callback([&] {
        action = [&] {
            const TruncSeries s = theta_c(parse_scalar(ring_or_default(ring), c), cap);
            out.doc["series"] = series_json(s);
            out.text << s.to_string() << "\n";
            return kPass;
        };
    });

    auto* check_rep = series->add_subcommand("check-rep", "Defect of the representation equation");
    check_rep->add_option("--phi", phi, "Series expression")->required();
    check_rep->add_option("--cap", cap, "Truncation degree")->required()->check(CLI::PositiveNumber);
    check_rep->add_option("--ring", ring, "Q, Z or Z/n");
    check_rep->callback([&] {
        action = [&] {
            const TruncSeries s = parse_series(phi, ring_or_default(ring), cap);
            const BiTruncSeries d = defect_rep(s);
            out.doc["phi"] = series_json(s);
            out.doc["defect"] = d.to_string();
            out.doc["valid_through"] = d.cap();
            out.text << "defect = " << d.to_string() << "  (through total degree " << d.cap() << ")\n";
            return d.is_zero() ? kPass : kFail;
        };
    });

    std::string& c0 = args.c0;
    auto* solve = series->add_subcommand("solve", "Solve the representation equation with phi(0) = c0");
    solve->add_option("--c0", c0, "Constant term")->required();
    solve->add_option("--cap", cap, "Truncation degree")->required()->check(CLI::NonNegativeNumber);
    solve->add_option("--ring", ring, "Q, Z or Z/n");
    solve->callback([&] {
        action = [&] {
            const TruncSeries s = solve_rep(parse_scalar(ring_or_default(ring), c0), cap);
            out.doc["series"] = series_json(s);
            out.text << s.to_string() << "\n";
            return kPass;
        };
    });

    auto* check_gen = series->add_subcommand("check-gen", "Defect of the two-series equation");
    check_gen->add_option("--phi", phi, "Series acting on the first argument")->required();
    check_gen->add_option("--psi", psi, "Series acting on the second argument")->required();
    check_gen->add_option("--rho", rho, "Series of the bracket")->required();
    check_gen->add_option("--cap", cap, "Truncation degree")->required()->check(CLI::PositiveNumber);
    check_gen->add_option("--ring", ring, "Q, Z or Z/n");
    check_gen->callback([&] {
        action = [&] {
            const RingSpec r = ring_or_default(ring);
            const BiTruncSeries d =
                defect_general(parse_series(phi, r, cap), parse_series(psi, r, cap), parse_series(rho, r, cap));
            out.doc["defect"] = d.to_string();
            out.doc["valid_through"] = d.cap();
            out.text << "defect = " << d.to_string() << "  (through total degree " << d.cap() << ")\n";
            return d.is_zero() ? kPass : kFail;
        };
    });
    (void)opt;
}

// ------------------------------------------------------------------ algebra

std::vector<BasisElement> generator_list(const std::string& option) {
    std::vector<BasisElement> gens;
    if (!option.empty() && std::all_of(option.begin(), option.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
        const int k = std::stoi(option);
        if (k < 1 || k > 26) throw InputError("--gens must be between 1 and 26");
        for (int i = 0; i < k; ++i) gens.push_back({std::string(1, static_cast<char>('a' + i)), 0});
        return gens;
    }
    std::stringstream ss(option);
    std::string label;
    while (std::getline(ss, label, ','))
        if (!label.empty()) gens.push_back({label, 0});
    if (gens.empty()) throw InputError("--gens needs a count or a comma-separated label list");
    return gens;
}

void add_algebra_commands(CLI::App& app, Options& opt, Args& args, Output& out, std::function<int()>& action) {
    auto* algebra = app.add_subcommand("algebra", "Lie superalgebras given by structure constants");
    algebra->require_subcommand(1);

    std::string &file = args.file, &ring = args.ring, &gens = args.gens, &out_file = args.out_file;
    int& cls = args.cls;

    auto* validate_cmd = algebra->add_subcommand("validate", "Check the Lie superalgebra axioms");
    validate_cmd->add_option("file", file, "Algebra JSON file or builtin:NAME")->required();
    validate_cmd->add_option("--ring", ring, "Override the ring of the file");
    validate_cmd->callback([&] {
        action = [&] {
            const AlgebraPtr alg = load_algebra(file, ring_override(ring));
            const ValidationReport report = validate(*alg, opt.seed);
            json violations = json::array();
            for (const auto& v : report.violations) {
                violations.push_back({{"axiom", v.axiom}, {"witness", v.witness}, {"detail", v.detail}});
                out.text << "violation: " << v.axiom << " at (";
                for (std::size_t i = 0; i < v.witness.size(); ++i) out.text << (i ? ", " : "") << v.witness[i];
                out.text << ")";
                if (!v.detail.empty()) out.text << ": " << v.detail;
                out.text << "\n";
            }
            out.doc["ring"] = alg->ring().to_string();
            out.doc["dimension"] = alg->dim();
            out.doc["valid"] = report.valid();
            out.doc["violations"] = violations;
            if (!report.valid()) return kFail;
            const auto n = alg->nilpotency_class();
            out.doc["nilpotency_class"] = n ? json(*n) : json(nullptr);
            out.text << "valid, " << (n ? std::to_string(*n) + "-nilpotent" : std::string("not nilpotent")) << "\n";
            return kPass;
        };
    });

    auto* free_cmd = algebra->add_subcommand("free-nilpotent", "Free nilpotent Lie algebra on even generators");
    free_cmd->add_option("--gens", gens, "Generator count or comma-separated labels")->required();
    free_cmd->add_option("--class", cls, "Nilpotency class N")->required()->check(CLI::PositiveNumber);
    free_cmd->add_option("--ring", ring, "Q, Z or Z/n");
    free_cmd->add_option("--out", out_file, "Write the algebra here instead of stdout");
    free_cmd->callback([&] {
        action = [&] {
            require_degree(opt, cls, "--class");
            const AlgebraPtr alg = free_nilpotent(generator_list(gens), cls, ring_or_default(ring));
            const std::string document = algebra_to_json(*alg);
            json labels = json::array();
            for (const auto& b : alg->basis()) labels.push_back(b.label);
            out.doc["dimension"] = alg->dim();
            out.doc["basis"] = labels;
            if (out_file.empty()) {
                out.doc["algebra"] = json::parse(document);
                out.text << document;
            } else {
                std::ofstream f(out_file);
                if (!f) throw InputError("cannot write " + out_file);
                f << document;
                out.doc["written"] = out_file;
                out.text << "wrote " << out_file << ": dimension " << alg->dim() << "\n";
            }
            return kPass;
        };
    });
}

// ---------------------------------------------------------------------- rep

void add_rep_commands(CLI::App& app, Options& opt, Args& args, Output& out, std::function<int()>& action) {
    auto* rep = app.add_subcommand("rep", "Representations by coderivations of S(g)");
    rep->require_subcommand(1);

    std::string &file = args.file, &ring = args.ring, &phi = args.phi, &g = args.g, &h = args.h,
                &morphism = args.morphism;
    int& degree = args.degree;
    int& series_cap = args.series_cap;

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--algebra", file, "Algebra JSON file or builtin:NAME")->required();
        cmd->add_option("--ring", ring, "Override the ring of the algebra");
        cmd->add_option("--degree", degree, "Check monomials up to this degree")->capture_default_str();
        cmd->add_option("--series-cap", series_cap, "Truncation of the series (default D+1, or N-1 if N-nilpotent)");
    };

    auto* check = rep->add_subcommand("check", "[Phi^a, Phi^b] = Phi^[a,b] on basis pairs");
    common(check);
    check->add_option("--phi", phi, "Series expression")->required();
    check->callback([&] {
        action = [&] {
            require_degree(opt, degree, "--degree");
            const AlgebraPtr alg = load_algebra(file, ring_override(ring));
            const TruncSeries s = parse_series(phi, alg->ring(), args.series_cap >= 0 ? args.series_cap : representation_series_cap(*alg, args.degree));
            out.doc["series"] = series_json(s);
            return emit_reports(out, {representation_check(s, s, s, alg, degree)});
        };
    });

    auto* commute = rep->add_subcommand("commute", "[Phi_g^a, Phi_h^b] = 0 on basis pairs");
    common(commute);
    commute->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
    commute->add_option("--g", g, "Constant term of the first series")->required();
    commute->add_option("--h", h, "Constant term of the second series")->required();
    commute->callback([&] {
        action = [&] {
            require_degree(opt, degree, "--degree");
            const AlgebraPtr alg = load_algebra(file, ring_override(ring));
            const int cap = args.series_cap >= 0 ? args.series_cap : representation_series_cap(*alg, args.degree);
            const TruncSeries fg = phi_c(parse_scalar(alg->ring(), g), cap);
            const TruncSeries fh = phi_c(parse_scalar(alg->ring(), h), cap);
            const TruncSeries zero(alg->ring(), cap);
            CheckReport r = representation_check(fg, fh, zero, alg, degree);
            r.name = "commuting pair";
            return emit_reports(out, {r});
        };
    });

    auto* functorial = rep->add_subcommand("functorial", "f o Phi^a = Phi^f(a) o f");
    common(functorial);
    functorial->add_option("--morphism", morphism, "Morphism JSON file")->required();
    functorial->add_option("--phi", phi, "Series expression")->required();
    functorial->callback([&] {
        action = [&] {
            require_degree(opt, degree, "--degree");
            const AlgebraPtr alg = load_algebra(file, ring_override(ring));
            const LieMorphism f = load_morphism(morphism, alg);
            const ValidationReport mr = f.check();
            if (!mr.valid()) {
                out.text << "not a morphism: " << mr.violations.front().axiom << "\n";
                out.doc["morphism_valid"] = false;
                return kInputError;
            }
            int cap = series_cap;
            if (cap < 0) cap = std::max(representation_series_cap(*alg, degree), representation_series_cap(*f.target(), degree));
            const TruncSeries s = parse_series(phi, alg->ring(), cap);
            return emit_reports(out, {functoriality_check(f, s, degree)});
        };
    });
}

// ---------------------------------------------------------------------- pbw

void add_pbw_commands(CLI::App& app, Options& opt, Args& args, Output& out, std::function<int()>& action) {
    auto* pbw = app.add_subcommand("pbw", "Symbol map and symmetrization for U(g)");
    pbw->require_subcommand(1);

    std::string &file = args.file, &ring = args.ring, &expr = args.expr, &kind = args.kind;
    int& degree = args.degree;

    auto common = [&](CLI::App* cmd) {
        cmd->add_option("--algebra", file, "Algebra JSON file or builtin:NAME")->required();
        cmd->add_option("--ring", ring, "Override the ring of the algebra");
    };

    auto* symbol_cmd = pbw->add_subcommand("symbol", "sigma(u) for u in U(g)");
    common(symbol_cmd);
    symbol_cmd->add_option("--expr", expr, "Element of U(g), e.g. \"j(x)*j(y)\"")->required();
    symbol_cmd->callback([&] {
        action = [&] {
            const AlgebraPtr alg = load_algebra(file, ring_override(ring));
            const EnvElement u = parse_env(alg, expr);
            require_degree(opt, u.degree(), "expression degree");
            const SymbolMap beta = SymbolMap::standard(alg, std::max(u.degree(), 1));
            const SymElement s = beta.symbol(u);
            out.doc["input"] = u.to_string();
            out.doc["symbol"] = s.to_string();
            out.text << s.to_string() << "\n";
            return kPass;
        };
    });

    auto* symmetrize_cmd = pbw->add_subcommand("symmetrize", "beta(w) for w in S(g)");
    common(symmetrize_cmd);
    symmetrize_cmd->add_option("--expr", expr, "Element of S(g), e.g. \"x*y + 1/2*z\"")->required();
    symmetrize_cmd->callback([&] {
        action = [&] {
            const AlgebraPtr alg = load_algebra(file, ring_override(ring));
            const SymElement w = parse_sym(alg, expr);
            require_degree(opt, w.max_degree(), "expression degree");
            const SymbolMap beta = SymbolMap::standard(alg, std::max(w.max_degree(), 1));
            const EnvElement u = beta.symmetrize(w);
            out.doc["input"] = w.to_string();
            out.doc["symmetrization"] = u.to_string();
            out.text << u.to_string() << "\n";
            return kPass;
        };
    });

    auto* verify = pbw->add_subcommand("verify", "Inversion, coproduct compatibility and strong PBW");
    common(verify);
    verify->add_option("--degree", degree, "Check up to this degree")->capture_default_str();
    verify->callback([&] {
        action = [&] {
            require_degree(opt, degree, "--degree");
            const AlgebraPtr alg = load_algebra(file, ring_override(ring));
            const SymbolMap beta = SymbolMap::standard(alg, std::max(degree, 1));
            return emit_reports(out, {inversion_check(beta, degree), compatibility_check(beta, degree),
                                      strong_pbw_check(beta, {}, {}, degree)});
        };
    });

    auto* conjugate = pbw->add_subcommand("conjugate", "beta^-1 o A o beta against Phi_0, Phi_1, -Phi_-1");
    common(conjugate);
    conjugate->add_option("--kind", kind, "adjoint, left or right")
        ->required()
        ->check(CLI::IsMember({"adjoint", "left", "right"}));
    conjugate->add_option("--degree", degree, "Check up to this degree")->capture_default_str();
    conjugate->callback([&] {
        action = [&] {
            require_degree(opt, degree, "--degree");
            const AlgebraPtr alg = load_algebra(file, ring_override(ring));
            const ActionKind k = kind == "adjoint" ? ActionKind::adjoint
                                 : kind == "left"  ? ActionKind::left
                                                   : ActionKind::right;
            const SymbolMap beta = SymbolMap::standard(alg, degree + 1);
            std::vector<CheckReport> reports;
            for (std::size_t i = 0; i < alg->dim(); ++i) {
                CheckReport r = conjugation_check(beta, k, alg->element(i), degree);
                r.name = kind + " " + alg->label(i);
                reports.push_back(std::move(r));
            }
            return emit_reports(out, reports);
        };
    });
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computations with coderivation representations and PBW symmetrization"};
    app.require_subcommand(1);
    Options opt;
    Args args;
    Output out;
    std::function<int()> action;

    app.add_option("--output", opt.output, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    app.add_option("--seed", opt.seed, "Seed for randomized checks")->capture_default_str();
    app.add_flag("--unsafe-degree", opt.unsafe_degree, "Allow degrees above 8");

    add_series_commands(app, opt, args, out, action);
    add_algebra_commands(app, opt, args, out, action);
    add_rep_commands(app, opt, args, out, action);
    add_pbw_commands(app, opt, args, out, action);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    int code = kInputError;
    std::string error;
    try {
        code = action();
    } catch (const NotInvertible& e) {
        code = kObstruction;
        error = e.what();
        out.doc["blocking_integer"] = e.blocking().get_str();
        if (app.got_subcommand("pbw")) {
            error += " (the symbol map needs 1/2, ..., 1/n for words of length n, or only 1/2, ..., 1/N on an "
                     "N-nilpotent algebra)";
        }
    } catch (const InputError& e) {
        code = kInputError;
        error = e.what();
    } catch (const RingMismatch& e) {
        code = kInputError;
        error = e.what();
    } catch (const Unsupported& e) {
        code = kInputError;
        error = e.what();
    } catch (const std::invalid_argument& e) {
        code = kInputError;
        error = e.what();
    }

    out.doc["status"] = status_name(code);
    out.doc["exit_code"] = code;
    if (!error.empty()) out.doc["error"] = error;

    if (opt.output == "json") {
        std::cout << out.doc.dump(2) << "\n";
    } else {
        std::cout << out.text.str();
        if (!error.empty()) std::cerr << "error: " << error << "\n";
    }
    return code;
}
