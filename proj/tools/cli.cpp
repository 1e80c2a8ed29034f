#include "cli.hpp"

#include "output.hpp"
#include "verify.hpp"

#include "bvtp/error.hpp"
#include "bvtp/expansion.hpp"
#include "bvtp/fundamental.hpp"
#include "bvtp/hilbert.hpp"
#include "bvtp/problem_io.hpp"
#include "bvtp/resolvent.hpp"
#include "bvtp/spectrum.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

namespace bvtp::cli {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Options {
    std::string command;
    std::string problem_file;
    std::vector<double> window;
    std::size_t grid = 0;
    double tol = 1e-11;
    std::string out;
    std::string format = "csv";
    bool quiet = false;
    std::string lambda = "-1";
    std::string f = "const:1";
    std::size_t n = 10;
    std::size_t index = 1;
    std::size_t points = 101;
};

struct CommandResult {
    Table table;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    int exit_code = 0;
};

double parse_number(const std::string& text) {
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw Error(ErrorCode::InvalidArgument, "not a number: '" + text + "'");
    return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string part;
    std::istringstream is(text);
    while (std::getline(is, part, sep)) parts.push_back(part);
    if (!text.empty() && text.back() == sep) parts.emplace_back();
    return parts;
}

/// "re" or "re,im".
Complex parse_lambda(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() == 1) return parse_number(parts[0]);
    if (parts.size() == 2) return {parse_number(parts[0]), parse_number(parts[1])};
    throw Error(ErrorCode::InvalidArgument, "lambda must be 're' or 're,im': '" + text + "'");
}

/// "const:v" or "poly:c0,c1,...[;c0,c1,...]" (one list per piece, or one list for all pieces).
PiecewiseFunction parse_function(const std::string& text, std::size_t pieces) {
    if (text.rfind("const:", 0) == 0) return PiecewiseFunction::constant(pieces, parse_number(text.substr(6)));
    if (text.rfind("poly:", 0) == 0) {
        std::vector<Polynomial> polys;
        for (const auto& piece : split(text.substr(5), ';')) {
            Polynomial p;
            for (const auto& c : split(piece, ',')) p.coefficients.push_back(parse_number(c));
            if (p.coefficients.empty()) throw Error(ErrorCode::InvalidArgument, "empty polynomial in '" + text + "'");
            polys.push_back(std::move(p));
        }
        if (polys.size() == 1) polys.assign(pieces, polys.front());
        if (polys.size() != pieces) {
            throw Error(ErrorCode::InvalidArgument, "function '" + text + "' has " + std::to_string(polys.size()) +
                                                        " pieces, the problem has " + std::to_string(pieces));
        }
        return PiecewiseFunction::polynomials(polys);
    }
    throw Error(ErrorCode::InvalidArgument, "function must start with 'const:' or 'poly:': '" + text + "'");
}

std::size_t default_grid(Window w) {
    const auto n = static_cast<std::size_t>(std::ceil((w.hi - w.lo) / 0.1)) + 1;
    return std::clamp<std::size_t>(n, 2001, 50001);
}

Window explicit_window(const Options& o) {
    if (o.window.empty()) return {-10, 200};
    if (!(o.window[0] < o.window[1])) throw Error(ErrorCode::InvalidArgument, "window must satisfy lo < hi");
    return {o.window[0], o.window[1]};
}

RootOptions root_options(const Options& o) {
    RootOptions r;
    r.lambda_tol = o.tol;
    return r;
}

/// Spectrum holding at least `needed` eigenvalues. Without --window the upper
/// end doubles from 200 until enough roots appear (up to 1e6).
Spectrum spectrum_with(const ValidatedProblem& problem, const Options& o, std::size_t needed) {
    Window w = explicit_window(o);
    while (true) {
        const std::size_t grid = o.grid ? o.grid : default_grid(w);
        Spectrum s = eigenvalues(problem, w, grid, root_options(o));
        if (s.eigenvalues.size() >= needed || !o.window.empty() || w.hi >= 1e6) return s;
        w.hi *= 2;
    }
}

/// Sample points per piece: `count` uniform nodes including both ends.
std::vector<double> piece_points(const ValidatedProblem& problem, std::size_t piece, std::size_t count) {
    count = std::max<std::size_t>(count, 2);
    std::vector<double> xs(count);
    const double lo = problem.piece_lo(piece);
    const double hi = problem.piece_hi(piece);
    for (std::size_t k = 0; k < count; ++k) {
        xs[k] = k + 1 == count ? hi : lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1);
    }
    return xs;
}

void add_complex(nlohmann::ordered_json& j, const std::string& key, Complex z) {
    // Adding 0.0 turns -0 into +0 so the output does not depend on the sign of zero.
    j[key + "_re"] = z.real() + 0.0;
    j[key + "_im"] = z.imag() + 0.0;
}

CommandResult cmd_charfn(const ValidatedProblem& problem, const Options& o) {
    const Window w = explicit_window(o);
    const std::size_t grid = o.grid ? o.grid : default_grid(w);
    CommandResult r;
    r.table.columns = {"lambda", "omega"};
    for (const auto& s : sample_characteristic(problem, w, grid, 1e-12)) r.table.add({s.lambda, s.omega});
    return r;
}

CommandResult cmd_eigs(const ValidatedProblem& problem, const Options& o) {
    const Window w = explicit_window(o);
    const Spectrum s = eigenvalues(problem, w, o.grid ? o.grid : default_grid(w), root_options(o));
    CommandResult r;
    r.table.columns = {"index", "lambda", "abs_omega", "bracket_lo", "bracket_hi", "iterations"};
    for (std::size_t k = 0; k < s.eigenvalues.size(); ++k) {
        const RefinedRoot& root = s.roots[k];
        r.table.add({static_cast<std::int64_t>(k + 1), root.lambda, root.abs_omega, root.bracket.lo, root.bracket.hi,
                     static_cast<std::int64_t>(root.iterations)});
    }
    r.summary["count"] = s.eigenvalues.size();
    r.summary["warnings"] = s.warnings;
    return r;
}

CommandResult cmd_eigenfunction(const ValidatedProblem& problem, const Options& o) {
    if (o.index == 0) throw Error(ErrorCode::InvalidArgument, "--index is 1-based");
    const Spectrum s = spectrum_with(problem, o, o.index);
    if (s.eigenvalues.size() < o.index) {
        throw Error(ErrorCode::InsufficientEigenvalues,
                    "window holds " + std::to_string(s.eigenvalues.size()) + " eigenvalues, index " +
                        std::to_string(o.index) + " requested");
    }
    const Eigenfunction ef = eigenfunction(problem, s.eigenvalues[o.index - 1]);
    CommandResult r;
    r.table.columns = {"piece", "x", "psi_re", "psi_im", "dpsi_re", "dpsi_im"};
    for (std::size_t p = 0; p < problem.piece_count(); ++p) {
        for (double x : piece_points(problem, p, o.points)) {
            const ValuePair v = ef.psi.f(p, x);
            r.table.add({static_cast<std::int64_t>(p + 1), x, v.u.real(), v.u.imag(), v.du.real(), v.du.imag()});
        }
    }
    r.summary["index"] = o.index;
    r.summary["lambda"] = ef.lambda;
    add_complex(r.summary, "f1", ef.psi.f1);
    add_complex(r.summary, "f2", ef.psi.f2);
    r.summary["right_residual"] = ef.right_residual;
    return r;
}

CommandResult cmd_green(const ValidatedProblem& problem, const Options& o) {
    const Complex lambda = parse_lambda(o.lambda);
    const GreenKernel kernel(problem, lambda);
    const std::size_t count = o.grid ? o.grid : 21;
    std::vector<double> xs(count);
    const double len = problem.b() - problem.a();
    for (std::size_t i = 0; i < count; ++i) {
        xs[i] = problem.a() + len * (static_cast<double>(i) + 0.5) / static_cast<double>(count);
    }
    CommandResult r;
    r.table.columns = {"x", "y", "piece_x", "piece_y", "g_re", "g_im", "weighted_re", "weighted_im"};
    for (double x : xs) {
        for (double y : xs) {
            const std::size_t px = problem.piece_of(x);
            const std::size_t py = problem.piece_of(y);
            const Complex g = kernel.evaluate(px, x, py, y);
            const Complex wg = problem.interval_weight(px) * g;
            r.table.add({x, y, static_cast<std::int64_t>(px + 1), static_cast<std::int64_t>(py + 1), g.real(), g.imag(),
                         wg.real(), wg.imag()});
        }
    }
    add_complex(r.summary, "lambda", lambda);
    r.summary["note"] = "points on an interface use the limit from the left piece";
    return r;
}

CommandResult cmd_solve(const ValidatedProblem& problem, const Options& o) {
    const Complex lambda = parse_lambda(o.lambda);
    const PiecewiseFunction f = parse_function(o.f, problem.piece_count());
    const ResolventSolution sol = solve_resolvent(problem, lambda, f);
    CommandResult r;
    r.table.columns = {"piece", "x", "u_re", "u_im", "du_re", "du_im"};
    for (std::size_t p = 0; p < problem.piece_count(); ++p) {
        for (double x : piece_points(problem, p, o.points)) {
            const ValuePair v = sol.u(p, x);
            r.table.add({static_cast<std::int64_t>(p + 1), x, v.u.real(), v.u.imag(), v.du.real(), v.du.imag()});
        }
    }
    add_complex(r.summary, "lambda", lambda);
    r.summary["f"] = o.f;
    r.summary["residual_ode"] = sol.residual_ode;
    r.summary["residual_bc"] = sol.residual_bc;
    r.summary["residual_trans"] = sol.residual_trans;
    return r;
}

CommandResult cmd_expand(const ValidatedProblem& problem, const Options& o) {
    if (o.n == 0) throw Error(ErrorCode::InvalidArgument, "--n must be positive");
    const PiecewiseFunction f = parse_function(o.f, problem.piece_count());
    const Spectrum s = spectrum_with(problem, o, o.n);
    const auto basis = eigenbasis(problem, s, o.n);
    const AugmentedFunction F = AugmentedFunction::plain(f);
    CommandResult r;
    r.table.columns = {"n", "lambda", "coefficient_re", "coefficient_im", "residual"};
    for (std::size_t n = 1; n <= o.n; ++n) {
        const ExpansionResult e = expand(problem, F, basis, n);
        const Complex c = e.coefficients.back();
        r.table.add({static_cast<std::int64_t>(n), basis[n - 1].lambda, c.real(), c.imag(), e.l2_residual});
    }
    r.summary["f"] = o.f;
    r.summary["norm"] = norm_h(problem, F, 1e-12);
    return r;
}

CommandResult cmd_verify(const ValidatedProblem& problem, const Options& o) {
    VerifyOptions v;
    v.window = explicit_window(o);
    v.grid = o.grid ? o.grid : default_grid(v.window);
    CommandResult r;
    r.table.columns = {"check", "passed", "value", "threshold", "detail"};
    int failures = 0;
    for (const CheckResult& c : run_verification(problem, v)) {
        r.table.add({c.name, c.passed, c.value, c.threshold, c.detail});
        if (!c.passed) ++failures;
    }
    r.summary["failures"] = failures;
    r.exit_code = failures == 0 ? 0 : std::min(125, 2 + failures);
    return r;
}

int cmd_validate(const Options& o, std::ostream& out) {
    const ValidatedProblem problem = validate_problem(load_problem(o.problem_file));
    out << "kappa1=" << format_double(problem.kappa1()) << '\n';
    out << "kappa2=" << format_double(problem.kappa2()) << '\n';
    for (std::size_t i = 0; i < problem.interface_count(); ++i) {
        const ThetaMinors& t = problem.theta(i);
        out << "interface " << i + 1 << ": theta12=" << format_double(t.t12) << " theta13=" << format_double(t.t13)
            << " theta14=" << format_double(t.t14) << " theta23=" << format_double(t.t23)
            << " theta24=" << format_double(t.t24) << " theta34=" << format_double(t.t34) << '\n';
    }
    for (std::size_t s = 0; s < problem.piece_count(); ++s) {
        out << "piece " << s + 1 << ": V=" << format_double(problem.interval_weight(s)) << '\n';
    }
    out << "left_weight=" << format_double(problem.left_boundary_weight()) << '\n';
    out << "right_weight=" << format_double(problem.right_boundary_weight()) << '\n';
    return 0;
}

nlohmann::ordered_json manifest(const Options& o, const CLI::App& sub) {
    nlohmann::ordered_json m;
    m["tool"] = "bvtp";
    m["version"] = kVersion;
    m["command"] = o.command;
    m["problem"] = o.problem_file;
    nlohmann::ordered_json opts = nlohmann::ordered_json::object();
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_name(false, true);
        if (name.rfind("--", 0) != 0 || name == "--help" || name == "--out" || name == "--format" ||
            name == "--quiet") {
            continue;
        }
        const auto values = opt->results();
        if (values.empty()) continue;
        nlohmann::ordered_json parsed = nlohmann::ordered_json::array();
        for (const std::string& v : values) {
            // Numbers stay numbers in the manifest; everything else is kept verbatim.
            std::size_t used = 0;
            double d = 0;
            try {
                d = std::stod(v, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            parsed.push_back(used == v.size() && used > 0 ? nlohmann::ordered_json(d) : nlohmann::ordered_json(v));
        }
        opts[name.substr(2)] = parsed.size() == 1 ? parsed[0] : parsed;
    }
    m["options"] = opts;
    m["format"] = o.format;
    m["output"] = o.out.empty() ? "stdout" : o.out;
    return m;
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Spectral toolkit for Sturm-Liouville problems with transmission conditions and "
                 "eigenparameter-dependent boundary conditions"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    Options o;

    struct Spec {
        const char* name;
        const char* help;
        bool window, grid, tol, lambda, f, n, index, points;
    };
    const Spec specs[] = {
        {"validate", "check a problem file and print kappas, theta minors and weights", false, false, false, false,
         false, false, false, false},
        {"charfn", "sample omega(lambda) on a uniform real grid", true, true, false, false, false, false, false, false},
        {"eigs", "locate and refine the eigenvalues in a window", true, true, true, false, false, false, false, false},
        {"eigenfunction", "dump a normalized eigenfunction", true, true, true, false, false, false, true, true},
        {"green", "Green's kernel on a grid x grid mesh", false, true, false, true, false, false, false, false},
        {"solve", "solve lambda u + rho^2 u'' - q u = f with the boundary and transmission conditions", false, false,
         false, true, true, false, false, true},
        {"expand", "eigenfunction expansion coefficients and residuals", true, true, true, false, true, true, false,
         false},
        {"verify", "run the invariant suite and report pass/fail per check", true, true, false, false, false, false,
         false, false},
    };
    std::vector<CLI::App*> subs;
    for (const Spec& s : specs) {
        CLI::App* sub = app.add_subcommand(s.name, s.help);
        sub->add_option("problem", o.problem_file, "problem definition file")->required();
        if (s.window) sub->add_option("--window", o.window, "spectral window: lo hi")->expected(2);
        if (s.grid) sub->add_option("--grid", o.grid, "number of grid points");
        if (s.tol) sub->add_option("--tol", o.tol, "relative eigenvalue tolerance");
        if (s.lambda) sub->add_option("--lambda", o.lambda, "spectral parameter: re or re,im");
        if (s.f) sub->add_option("--f", o.f, "right-hand side: const:v or poly:c0,c1,... (';' between pieces)");
        if (s.n) sub->add_option("--n", o.n, "truncation order");
        if (s.index) sub->add_option("--index", o.index, "1-based eigenvalue index");
        if (s.points) sub->add_option("--points", o.points, "output points per piece");
        if (std::string(s.name) != "validate") {
            sub->add_option("--out", o.out, "output file (default: standard output)");
            sub->add_option("--format", o.format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
        }
        sub->add_flag("--quiet", o.quiet, "suppress progress messages");
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    CLI::App* sub = nullptr;
    for (CLI::App* s : subs) {
        if (s->parsed()) sub = s;
    }
    o.command = sub->get_name();

    try {
        if (o.command == "validate") return cmd_validate(o, out);

        const auto start = std::chrono::steady_clock::now();
        const ValidatedProblem problem = validate_problem(load_problem(o.problem_file));
        if (!o.quiet) err << "bvtp " << o.command << ": " << o.problem_file << '\n';
        CommandResult result;
        if (o.command == "charfn") result = cmd_charfn(problem, o);
        else if (o.command == "eigs") result = cmd_eigs(problem, o);
        else if (o.command == "eigenfunction") result = cmd_eigenfunction(problem, o);
        else if (o.command == "green") result = cmd_green(problem, o);
        else if (o.command == "solve") result = cmd_solve(problem, o);
        else if (o.command == "expand") result = cmd_expand(problem, o);
        else result = cmd_verify(problem, o);

        nlohmann::ordered_json m = manifest(o, *sub);
        m["summary"] = result.summary;
        m["duration_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const Format format = o.format == "jsonl" ? Format::JsonLines : Format::Csv;
        if (o.out.empty()) {
            write_table(out, m, result.table, format);
        } else {
            std::ofstream file(o.out);
            if (!file) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.out + "'");
            write_table(file, m, result.table, format);
        }
        if (!o.quiet) err << "bvtp " << o.command << ": " << result.table.rows.size() << " rows\n";
        return result.exit_code;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return is_input_error(e.code()) ? 1 : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace bvtp::cli
