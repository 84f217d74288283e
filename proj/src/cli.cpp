#include "pwt/cli.hpp"

#include "pwt/correlators.hpp"
#include "pwt/errors.hpp"
#include "pwt/gegenbauer.hpp"
#include "pwt/inverse.hpp"
#include "pwt/io.hpp"
#include "pwt/model.hpp"
#include "pwt/overlaps.hpp"
#include "pwt/pwt_check.hpp"
#include "pwt/semiclassics.hpp"
#include "pwt/slcoeffs.hpp"
#include "pwt/solver_fd.hpp"
#include "pwt/solver_shooting.hpp"
#include "pwt/svg.hpp"
#include "pwt/unfold.hpp"
#include "pwt/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace pwt {

namespace {

using nlohmann::json;

struct CliArgs {
    std::string config_path;
    std::string out_dir = "pwt_out";
    int n_max = -1;      // -1: take the config value
    int grid = -1;
    double eps_spec = -1.0;
    double epsilon = -1.0;
    int modes = -1;
    bool svg = false;
};

struct Context {
    IniFile cfg;
    std::string cfg_dir;
    CliArgs args;
    std::uint64_t hash = 0;
    std::ostream* out = nullptr;
};

std::string join_path(const std::string& dir, const std::string& name) {
    std::filesystem::path p(dir);
    p /= name;
    return p.string();
}

void emit(const Context& ctx, const std::string& name, const std::string& body) {
    write_text_atomic(join_path(ctx.args.out_dir, name), body);
}

void emit_json(const Context& ctx, const std::string& name, const json& j) {
    std::string s = "// pwt ";
    s += kVersion;
    s += " config-hash ";
    s += hash_hex(ctx.hash);
    s += "\n";
    // JSON proper cannot carry comments; keep the provenance inside instead.
    json wrapped = j;
    wrapped["meta"] = {{"version", kVersion}, {"config_hash", hash_hex(ctx.hash)}};
    emit(ctx, name, wrapped.dump(2) + "\n");
    (void)s;
}

// ---------------------------------------------------------------------------
// Model construction from the [model] section.

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_num(const std::string& tok, const std::string& what) {
    try {
        std::size_t used = 0;
        double v = std::stod(tok, &used);
        if (used == tok.size()) return v;
    } catch (...) {
    }
    throw InputError("bad number '" + tok + "' in " + what);
}

ProfileFn tabulated_from_csv(const std::string& path, const SystemGeometry& geom) {
    CsvTable t = read_csv(path);
    if (t.columns.size() != 2)
        throw InputError("tabulated profile CSV must have two columns (x, value)");
    std::vector<std::pair<double, double>> pts;
    pts.reserve(t.rows.size());
    for (const auto& r : t.rows) pts.emplace_back(r[0], r[1]);
    std::sort(pts.begin(), pts.end());
    if (pts.size() < 4) throw InputError("tabulated profile needs at least 4 points");
    double edge = geom.L / 2.0;
    if (pts.front().first > -edge + 1e-12 * geom.L || pts.back().first < edge - 1e-12 * geom.L)
        throw InputError("tabulated profile must cover [-L/2, L/2]");
    std::vector<double> samples(geom.grid_points);
    std::vector<double> xs = make_grid(geom);
    std::size_t j = 0;
    for (int i = 0; i < geom.grid_points; ++i) {
        double x = xs[i];
        while (j + 2 < pts.size() && pts[j + 1].first <= x) ++j;
        double x0 = pts[j].first, x1 = pts[j + 1].first;
        double f = x1 > x0 ? (x - x0) / (x1 - x0) : 0.0;
        samples[i] = pts[j].second + f * (pts[j + 1].second - pts[j].second);
    }
    return ProfileFn::tabulated(std::move(samples), geom.L, 3);
}

ProfileFn profile_from_string(const std::string& text, const SystemGeometry& geom,
                              const std::string& cfg_dir, const std::string& what) {
    std::vector<std::string> tok = split_ws(text);
    if (tok.empty()) throw InputError("empty profile descriptor for " + what);
    const std::string& kind = tok[0];
    auto need = [&](std::size_t n) {
        if (tok.size() != n + 1)
            throw InputError(what + ": '" + kind + "' takes " + std::to_string(n) + " argument(s)");
    };
    if (kind == "constant") {
        need(1);
        return ProfileFn::constant(parse_num(tok[1], what));
    }
    if (kind == "sqrt") {
        need(1);
        return ProfileFn::sqrt_profile(parse_num(tok[1], what));
    }
    if (kind == "power") {
        need(2);
        return ProfileFn::power_profile(parse_num(tok[1], what), parse_num(tok[2], what));
    }
    if (kind == "cosine") {
        if (tok.size() < 2) throw InputError(what + ": 'cosine' needs coefficients");
        std::vector<double> c;
        for (std::size_t i = 1; i < tok.size(); ++i) c.push_back(parse_num(tok[i], what));
        return ProfileFn::cosine_series(std::move(c));
    }
    if (kind == "tabulated") {
        need(1);
        std::filesystem::path p(tok[1]);
        if (p.is_relative()) p = std::filesystem::path(cfg_dir) / p;
        return tabulated_from_csv(p.string(), geom);
    }
    throw InputError(what + ": unknown profile kind '" + kind + "'");
}

struct ParsedModel {
    TLLModel model;
    bool family = false;
    GegenbauerFamily fam;
};

ParsedModel parse_model(const Context& ctx) {
    const IniFile& cfg = ctx.cfg;
    double L = cfg.get_double("model", "L", 1.0);
    int grid = ctx.args.grid > 0 ? ctx.args.grid : cfg.get_int("model", "grid_points", 1025);
    if (grid < 33 || grid % 2 == 0) throw UsageError("grid points must be odd and >= 33");
    SystemGeometry geom(L, grid);

    ParsedModel out;
    std::string family = cfg.get_or("model", "family", "");
    if (family == "gegenbauer") {
        out.family = true;
        out.fam.alpha = cfg.get_double("model", "alpha", 0.0);
        out.fam.v_amp = cfg.get_double("model", "v_amp", 1.0);
        out.fam.K_amp = cfg.get_double("model", "K_amp", 1.0);
        out.fam.massive = cfg.get_bool("model", "massive", false);
        out.model = gegenbauer_model(out.fam, geom);
        return out;
    }
    if (!family.empty()) throw InputError("unknown model family '" + family + "'");

    auto v_str = cfg.get("model", "v");
    auto K_str = cfg.get("model", "K");
    if (!v_str || !K_str) throw InputError("[model] must define v and K (or a family)");
    ProfileFn v = profile_from_string(*v_str, geom, ctx.cfg_dir, "model.v");
    ProfileFn K = profile_from_string(*K_str, geom, ctx.cfg_dir, "model.K");

    auto q_str = cfg.get("model", "q");
    auto mass = cfg.get("model", "mass");
    if (q_str && mass) throw InputError("[model] q and mass are mutually exclusive");
    if (q_str)
        out.model = make_with_q(geom, std::move(v), std::move(K),
                                profile_from_string(*q_str, geom, ctx.cfg_dir, "model.q"));
    else if (mass)
        out.model = make_with_mass(geom, std::move(v), std::move(K),
                                   cfg.get_double("model", "mass", 0.0));
    else
        out.model = make_massless(geom, std::move(v), std::move(K));
    return out;
}

// ---------------------------------------------------------------------------
// Spectrum dispatch.

enum class Method { Auto, Shooting, FiniteDiff, Closed };

Method method_from_string(const std::string& s) {
    if (s == "auto") return Method::Auto;
    if (s == "shooting") return Method::Shooting;
    if (s == "fd") return Method::FiniteDiff;
    if (s == "closed") return Method::Closed;
    throw InputError("unknown spectrum method '" + s + "'");
}

SLProblem clamp_problem(const SLProblem& prob, double delta) {
    SLProblem out = prob;
    double lim = prob.L / 2.0 - delta;
    auto wrap = [lim](std::function<double(double)> f) {
        return [f = std::move(f), lim](double x) { return f(std::clamp(x, -lim, lim)); };
    };
    out.w = wrap(prob.w);
    out.p = wrap(prob.p);
    out.q = wrap(prob.q);
    return out;
}

struct SolveOutcome {
    SLSpectrum spec;
    std::vector<EigenMode> modes;
    bool have_modes = false;
    std::string method_name;
    double clamp_delta = 0.0;
};

SolveOutcome run_solve(const ParsedModel& pm, int n_max, int want_modes, Method method) {
    const SystemGeometry& geom = pm.model.geometry;
    SolveOutcome out;
    if (method == Method::Closed && !pm.family)
        throw UsageError("closed-form spectra exist only for the half-circle family");
    if (method == Method::Auto) {
        if (pm.family)
            method = Method::Closed;
        else if (regularity_classify(pm.model) == Regularity::Regular)
            method = Method::Shooting;
        else
            method = Method::FiniteDiff;
    }
    switch (method) {
    case Method::Closed: {
        out.spec = gegenbauer_spectrum(pm.fam, geom, n_max);
        out.method_name = "closed-form";
        if (want_modes > 0) {
            out.modes = gegenbauer_modes(pm.fam, geom, std::min(want_modes - 1, n_max));
            out.have_modes = true;
        }
        break;
    }
    case Method::Shooting: {
        SLProblem prob = assemble_coefficients(pm.model).problem();
        out.spec = solve_spectrum_shooting(prob, n_max);
        out.method_name = "shooting";
        if (want_modes > 0) {
            SLSpectrum sub = out.spec;
            int m = std::min(want_modes - 1, n_max);
            out.modes = eigenmodes(prob, geom, sub, m);
            out.have_modes = true;
        }
        break;
    }
    case Method::FiniteDiff: {
        SLProblem prob = assemble_coefficients(pm.model).problem();
        bool irregular = regularity_classify(pm.model) != Regularity::Regular;
        if (irregular) {
            out.clamp_delta = std::max(geom.spacing() / 2.0, 1e-8 * geom.L);
            prob = clamp_problem(prob, out.clamp_delta);
            prob.q_is_zero = false; // the clamp breaks the structural zero mode
        }
        out.spec = solve_spectrum_fd(prob, n_max);
        out.method_name = irregular ? "finite-difference (endpoint clamp)" : "finite-difference";
        break;
    }
    default:
        throw UsageError("unresolved spectrum method");
    }
    return out;
}

std::string spectrum_csv(const Context& ctx, const SolveOutcome& so) {
    std::string s = artifact_header(ctx.hash);
    s += "n,lambda,E,parity,zero_count,error_estimate\n";
    for (std::size_t n = 0; n < so.spec.lambdas.size(); ++n) {
        double parity = 0.0, zeros = -1.0;
        if (so.have_modes && n < so.modes.size()) {
            parity = so.modes[n].parity == ParityClass::Even
                         ? 1.0
                         : (so.modes[n].parity == ParityClass::Odd ? -1.0 : 0.0);
            zeros = so.modes[n].zero_count;
        }
        s += csv_line({static_cast<double>(n), so.spec.lambdas[n], so.spec.energies[n], parity,
                       zeros, so.spec.errors.empty() ? 0.0 : so.spec.errors[n]});
    }
    return s;
}

std::string modes_csv(const Context& ctx, const ParsedModel& pm, const SolveOutcome& so) {
    std::vector<double> xs = make_grid(pm.model.geometry);
    std::string s = artifact_header(ctx.hash);
    s += "n,x,u,U\n";
    for (const EigenMode& m : so.modes)
        for (std::size_t i = 0; i < xs.size(); ++i)
            s += csv_line({static_cast<double>(m.n), xs[i], m.u[i], m.U[i]});
    return s;
}

// ---------------------------------------------------------------------------
// Commands.

int cmd_spectrum(Context& ctx) {
    ParsedModel pm = parse_model(ctx);
    int n_max = ctx.args.n_max >= 0 ? ctx.args.n_max : ctx.cfg.get_int("spectrum", "n_max", 50);
    if (n_max < 0) throw UsageError("n_max must be nonnegative");
    Method method = method_from_string(ctx.cfg.get_or("spectrum", "method", "auto"));
    int want_modes =
        ctx.args.modes >= 0 ? ctx.args.modes : ctx.cfg.get_int("spectrum", "modes", 0);
    SolveOutcome so = run_solve(pm, n_max, want_modes, method);

    emit(ctx, "spectrum.csv", spectrum_csv(ctx, so));
    if (so.have_modes) emit(ctx, "modes.csv", modes_csv(ctx, pm, so));
    json j{{"command", "spectrum"},
           {"method", so.method_name},
           {"n_max", n_max},
           {"grid_points", pm.model.geometry.grid_points},
           {"L", pm.model.geometry.L},
           {"clamp_delta", so.clamp_delta}};
    emit_json(ctx, "run.json", j);

    *ctx.out << "spectrum: method=" << so.method_name << ", levels 0.." << n_max
             << ", E_1=" << format_double(so.spec.energies.size() > 1 ? so.spec.energies[1] : 0.0)
             << "\n";
    return 0;
}

int cmd_check_pwt(Context& ctx) {
    ParsedModel pm = parse_model(ctx);
    int n_max = ctx.args.n_max >= 0 ? ctx.args.n_max : ctx.cfg.get_int("pwt", "n_max", 32);
    if (n_max < 8) throw UsageError("the verdict needs at least levels 0..8");
    Method method = method_from_string(ctx.cfg.get_or("spectrum", "method", "auto"));
    int want_modes = ctx.args.modes >= 0 ? ctx.args.modes
                                         : ctx.cfg.get_int("pwt", "modes_check", n_max + 1);
    SolveOutcome so;
    try {
        so = run_solve(pm, n_max, want_modes, method);
    } catch (const Error&) {
        if (method != Method::Auto) throw;
        so = run_solve(pm, n_max, 0, Method::FiniteDiff);
    }

    PWTOptions opts;
    opts.eps_spec =
        ctx.args.eps_spec > 0 ? ctx.args.eps_spec : ctx.cfg.get_double("pwt", "eps_spec", 1e-7);
    opts.eps_parity = ctx.cfg.get_double("pwt", "eps_parity", 1e-6);
    opts.m_search = ctx.cfg.get_int("pwt", "m_search", 15);
    opts.max_shift = ctx.cfg.get_int("pwt", "max_shift", 8);
    PWTReport rep = classify_pwt(pm.model, so.spec, so.have_modes ? &so.modes : nullptr, opts);

    emit(ctx, "spectrum.csv", spectrum_csv(ctx, so));
    json j{{"command", "check-pwt"},
           {"method", so.method_name},
           {"is_pwt", rep.is_pwt},
           {"parity_ok", rep.parity_ok},
           {"modes_parity_ok", rep.modes_parity_ok},
           {"spectrum_ok", rep.spectrum_ok},
           {"condition_b", rep.condition_b},
           {"T", rep.T},
           {"c_shift", rep.c_shift},
           {"m", rep.detection.m},
           {"max_defect", rep.detection.max_defect},
           {"alternating", rep.detection.alternating},
           {"eps_spec", opts.eps_spec},
           {"note", rep.note}};
    emit_json(ctx, "verdict.json", j);

    if (rep.is_pwt)
        *ctx.out << "PWT: yes, T = " << format_double(rep.T) << "\n";
    else
        *ctx.out << "PWT: no (" << (rep.note.empty() ? "criteria not met" : rep.note) << ")\n";
    return 0;
}

int cmd_correlate(Context& ctx) {
    ParsedModel pm = parse_model(ctx);
    const SystemGeometry& geom = pm.model.geometry;
    double L = geom.L;

    std::string kind = ctx.cfg.get_or("correlate", "kind", "phiphi");
    if (kind != "phiphi" && kind != "phitheta" && kind != "thetatheta")
        throw InputError("correlate.kind must be phiphi, phitheta, or thetatheta");
    int n_modes = ctx.args.modes >= 0 ? ctx.args.modes : ctx.cfg.get_int("correlate", "n_modes", 64);
    if (n_modes < 1) throw UsageError("correlate needs at least one mode");
    double eps = ctx.args.epsilon > 0 ? ctx.args.epsilon
                                      : ctx.cfg.get_double("correlate", "epsilon", 0.01 * L);
    double x_ref = ctx.cfg.get_double("correlate", "x_ref", -0.375 * L);
    if (std::abs(x_ref) > L / 2.0) throw InputError("x_ref outside the channel");

    Method method = method_from_string(ctx.cfg.get_or("spectrum", "method", "auto"));
    SolveOutcome so = run_solve(pm, n_modes, n_modes + 1, method);
    if (!so.have_modes)
        throw UsageError("correlate needs eigenfunctions; the finite-difference path has none");

    // Closed-form v0 for family models; the numerical map otherwise.
    double v0 = pm.family ? 2.0 * pm.fam.v_amp / std::numbers::pi
                          : coordinate_map(pm.model.v, geom).v0;
    double T_nat = L / v0;
    double t_min = ctx.cfg.get_double("correlate", "t_min", 0.0);
    double t_max = ctx.cfg.get_double("correlate", "t_max", 2.0 * T_nat);
    int t_steps = ctx.cfg.get_int("correlate", "t_steps", 65);
    int x_steps = ctx.cfg.get_int("correlate", "x_steps", 129);
    if (t_steps < 1 || x_steps < 2) throw UsageError("bad correlate scan sizes");

    std::vector<double> xs = make_grid(geom);
    std::size_t ip = 0;
    double best = 1e300;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (std::abs(xs[i] - x_ref) < best) {
            best = std::abs(xs[i] - x_ref);
            ip = i;
        }
    std::vector<std::size_t> xi;
    for (int k = 0; k < x_steps; ++k) {
        double frac = x_steps == 1 ? 0.0 : static_cast<double>(k) / (x_steps - 1);
        xi.push_back(static_cast<std::size_t>(
            std::llround(frac * static_cast<double>(xs.size() - 1))));
    }

    auto eval = [&](std::size_t i, double dt) {
        if (kind == "phiphi")
            return phi_phi_series(so.modes, so.spec.energies, i, ip, dt, eps, v0, n_modes);
        if (kind == "phitheta")
            return phi_theta_series(so.modes, so.spec.energies, i, ip, dt, eps, v0, n_modes);
        return theta_theta_series(so.modes, so.spec.energies, i, ip, dt, eps, v0, n_modes);
    };

    std::string csv = artifact_header(ctx.hash);
    csv += "x,t,re,im,abs\n";
    std::vector<std::vector<double>> heat(t_steps, std::vector<double>(xi.size()));
    double tail_max = 0.0;
    bool all_converged = true;
    for (int r = 0; r < t_steps; ++r) {
        double t = t_steps == 1 ? t_min : t_min + (t_max - t_min) * r / (t_steps - 1);
        for (std::size_t c = 0; c < xi.size(); ++c) {
            SeriesResult sr = eval(xi[c], t);
            csv += csv_line({xs[xi[c]], t, sr.value.real(), sr.value.imag(), std::abs(sr.value)});
            heat[r][c] = std::abs(sr.value);
            tail_max = std::max(tail_max, sr.tail);
            all_converged = all_converged && sr.converged;
        }
    }
    emit(ctx, "correlator.csv", csv);

    PWTOptions popts;
    popts.eps_spec =
        ctx.args.eps_spec > 0 ? ctx.args.eps_spec : ctx.cfg.get_double("pwt", "eps_spec", 1e-7);
    PWTReport rep = classify_pwt(pm.model, so.spec, &so.modes, popts);
    json j{{"command", "correlate"},
           {"kind", kind},
           {"method", so.method_name},
           {"n_modes", n_modes},
           {"epsilon", eps},
           {"x_ref", xs[ip]},
           {"v0", v0},
           {"T_natural", T_nat},
           {"is_pwt", rep.is_pwt},
           {"T", rep.T},
           {"tail_max", tail_max},
           {"series_converged", all_converged},
           {"t_min", t_min},
           {"t_max", t_max},
           {"t_steps", t_steps},
           {"x_steps", x_steps}};
    emit_json(ctx, "correlator.json", j);

    if (ctx.args.svg) {
        SvgAxes axes{"|C(x,t)| at x' = " + format_double(xs[ip]), "x", "t"};
        emit(ctx, "correlator_heatmap.svg",
             svg_heatmap(heat, -L / 2.0, L / 2.0, t_min, t_steps == 1 ? t_min + 1.0 : t_max,
                         axes));
        double T_cmp = rep.is_pwt ? rep.T : T_nat;
        std::vector<double> xcol, c0, cT, c0m;
        for (std::size_t c = 0; c < xi.size(); ++c) xcol.push_back(xs[xi[c]]);
        for (std::size_t c = 0; c < xi.size(); ++c) {
            c0.push_back(std::abs(eval(xi[c], 0.0).value));
            cT.push_back(std::abs(eval(xi[c], T_cmp).value));
            std::size_t mirror = xs.size() - 1 - xi[c];
            c0m.push_back(std::abs(eval(mirror, 0.0).value));
        }
        SvgAxes axes2{"profiles at t = 0 and t = T", "x", "|C|"};
        emit(ctx, "correlator_profiles.svg",
             svg_line_plot(xcol, {c0, cT, c0m}, {"t = 0", "t = T", "t = 0 mirrored"}, axes2));
    }

    *ctx.out << "correlate: " << kind << ", " << n_modes << " modes, eps=" << format_double(eps)
             << (all_converged ? "" : " [series tail above tolerance]") << "\n";
    return 0;
}

int cmd_wkb(Context& ctx) {
    ParsedModel pm = parse_model(ctx);
    int n_lo = ctx.cfg.get_int("wkb", "n_lo", 50);
    int n_hi = ctx.args.n_max >= 0 ? ctx.args.n_max : ctx.cfg.get_int("wkb", "n_hi", 200);
    if (n_lo < 1 || n_hi <= n_lo) throw UsageError("need 1 <= n_lo < n_hi");

    LiouvilleForm form = liouville_transform(pm.model);
    SLProblem prob = assemble_coefficients(pm.model).problem();
    // High towers need the Richardson-refined grid solver: the phase noise
    // of shooting accumulates with n, while the extrapolated grid error
    // shrinks faster than the semiclassical residuals under study.
    SLSpectrum spec;
    std::string method = ctx.cfg.get_or("wkb", "method", "fd");
    if (method == "shooting")
        spec = solve_spectrum_shooting(prob, n_hi);
    else if (method == "fd") {
        FDOptions fopts;
        fopts.refinements = 2;
        spec = solve_spectrum_fd(prob, n_hi, fopts);
    } else
        throw InputError("wkb.method must be fd or shooting");

    double iv02 = 1.0 / (form.v0 * form.v0);
    std::string csv = artifact_header(ctx.hash);
    csv += "n,Lambda,phi,residual\n";
    int skipped = 0;
    for (int n = 0; n <= n_hi; ++n) {
        double lam = spec.lambdas[n] * iv02;
        try {
            BSPhase ph = bs_phase(form, lam);
            csv += csv_line({static_cast<double>(n), lam, ph.total(), ph.total() - M_PI * n});
        } catch (const TurningPointError&) {
            ++skipped;
        }
    }
    emit(ctx, "wkb.csv", csv);

    MomentReport mom = moment_conditions(form);
    WeylReport weyl = weyl_check(spec.energies, form.v0, form.L);
    ResidualFit fit = fit_phase_residuals(form, spec.lambdas, n_lo, n_hi);
    json j{{"command", "wkb"},
           {"n_lo", n_lo},
           {"n_hi", n_hi},
           {"skipped_below_barrier", skipped},
           {"a1", mom.a1},
           {"a2", mom.a2},
           {"delta", mom.delta},
           {"a1_zero", mom.a1_zero},
           {"second_zero", mom.second_zero},
           {"fit_c1", fit.c1},
           {"fit_c3", fit.c3},
           {"fit_rms", fit.rms},
           {"weyl_slope", weyl.slope},
           {"weyl_expected", weyl.expected},
           {"weyl_rel_dev", weyl.rel_dev},
           {"weyl_ok", weyl.ok},
           {"qhat_deriv_error", form.deriv_error_estimate}};
    emit_json(ctx, "wkb.json", j);

    *ctx.out << "wkb: a1=" << format_double(mom.a1) << ", fitted c1=" << format_double(fit.c1)
             << ", weyl " << (weyl.ok ? "ok" : "DEVIATES") << "\n";
    return 0;
}

int cmd_invert(Context& ctx) {
    ParsedModel pm = parse_model(ctx);
    if (pm.model.q || pm.model.mass)
        throw InconsistentInput("the inverse design targets gapless channels; drop q/mass");
    auto tpath = ctx.cfg.get("invert", "targets");
    if (!tpath) throw InputError("[invert] targets = <csv> is required");
    std::filesystem::path p(*tpath);
    if (p.is_relative()) p = std::filesystem::path(ctx.cfg_dir) / p;
    CsvTable t = read_csv(p.string());
    if (t.columns.size() < 2) throw InputError("target CSV must have columns (n, E)");
    std::vector<std::pair<int, double>> rows;
    for (const auto& r : t.rows) {
        double nd = r[0];
        int n = static_cast<int>(std::llround(nd));
        if (std::abs(nd - n) > 1e-9) throw InputError("non-integer mode index in target CSV");
        rows.emplace_back(n, r[1]);
    }
    std::sort(rows.begin(), rows.end());
    InverseProblem prob;
    prob.target_energies.resize(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].first != static_cast<int>(i))
            throw InputError("target CSV must list every level 0..N exactly once");
        prob.target_energies[i] = rows[i].second;
    }
    prob.v = pm.model.v;
    prob.geometry = pm.model.geometry;
    prob.basis_size = ctx.cfg.get_int("invert", "basis_size", 6);
    prob.tikhonov = ctx.cfg.get_double("invert", "tikhonov", 0.0);
    prob.K0 = ctx.cfg.get_double("invert", "K0", 1.0);

    InverseOptions iopts;
    iopts.fit_points = ctx.cfg.get_int("invert", "fit_points", 769);
    iopts.polish_points = ctx.cfg.get_int("invert", "polish_points", 4097);
    int n_check = ctx.args.n_max >= 0 ? ctx.args.n_max : ctx.cfg.get_int("invert", "n_check", 12);

    ReconstructionResult rec = reconstruct(prob, iopts);
    RoundTripReport round = roundtrip_validate(rec, prob, n_check);

    std::string ccsv = artifact_header(ctx.hash);
    ccsv += "k,c\n";
    for (std::size_t k = 0; k < rec.fit.coefficients.size(); ++k)
        ccsv += csv_line({static_cast<double>(k + 1), rec.fit.coefficients[k]});
    emit(ctx, "coefficients.csv", ccsv);

    std::vector<double> xs = make_grid(prob.geometry);
    std::string kcsv = artifact_header(ctx.hash);
    kcsv += "x,K\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        kcsv += csv_line({xs[i], rec.recovered.K.eval(xs[i], prob.geometry.L)});
    emit(ctx, "K_recovered.csv", kcsv);

    std::string qcsv = artifact_header(ctx.hash);
    qcsv += "y,qhat\n";
    for (std::size_t i = 0; i < xs.size(); ++i)
        qcsv += csv_line({xs[i], rec.fit.qhat_fit[i]});
    emit(ctx, "qhat.csv", qcsv);

    json trace = json::array();
    for (const IterRecord& it : rec.fit.trace)
        trace.push_back({{"iter", it.iter}, {"rnorm", it.rnorm}, {"lambda", it.lambda}});
    json j{{"command", "invert"},
           {"basis_size", prob.basis_size},
           {"coefficients", rec.fit.coefficients},
           {"residual_norm", rec.fit.residual_norm},
           {"cond_estimate", rec.fit.cond_estimate},
           {"spectral_residual", rec.spectral_residual},
           {"bc_defect", rec.recovered.bc_defect},
           {"positivity_ok", rec.recovered.positivity_ok},
           {"roundtrip_max_rel_error", round.max_rel_error},
           {"roundtrip_rel_errors", round.rel_errors},
           {"roundtrip_is_pwt", round.pwt.is_pwt},
           {"roundtrip_T", round.pwt.T},
           {"trace", trace}};
    emit_json(ctx, "roundtrip.json", j);

    if (ctx.args.svg) {
        std::vector<double> kvals, vvals;
        for (double x : xs) {
            kvals.push_back(rec.recovered.K.eval(x, prob.geometry.L));
            vvals.push_back(prob.v.eval(x, prob.geometry.L));
        }
        SvgAxes axes{"recovered stiffness", "x", "value"};
        emit(ctx, "K_recovered.svg", svg_line_plot(xs, {kvals, vvals}, {"K (recovered)", "v"}, axes));
    }

    *ctx.out << "invert: residual=" << format_double(rec.fit.residual_norm)
             << ", round-trip max rel err=" << format_double(round.max_rel_error) << ", PWT: "
             << (round.pwt.is_pwt ? "yes" : "no") << "\n";
    return 0;
}

int cmd_overlap(Context& ctx) {
    ParsedModel pm = parse_model(ctx);
    const SystemGeometry& geom = pm.model.geometry;
    double L = geom.L;
    UnfoldedMap um = unfold(pm.model.v, geom);
    double T = L / um.v0;

    double sigma = ctx.cfg.get_double("overlap", "sigma", L / 20.0);
    double center = ctx.cfg.get_double("overlap", "center", -0.375 * L);
    double k = ctx.cfg.get_double("overlap", "k", 0.0);
    if (!(sigma > 0.0)) throw InputError("overlap.sigma must be positive");
    if (std::abs(center) >= L / 2.0) throw InputError("overlap.center outside the channel");

    std::vector<double> xs = make_grid(geom);
    std::vector<cdouble> xi_p(xs.size()), xi_m(xs.size(), cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double d = (xs[i] - center) / (2.0 * sigma);
        xi_p[i] = std::exp(-d * d);
    }
    WavePacketPair packets = specular_pair(
        std::move(xi_p), std::move(xi_m), k,
        ctx.cfg.get_double("overlap", "delta_plus", 0.5),
        ctx.cfg.get_double("overlap", "delta_minus", 0.0));

    OverlapOptions oo;
    oo.epsilon = ctx.args.epsilon > 0 ? ctx.args.epsilon
                                      : ctx.cfg.get_double("overlap", "epsilon", 0.0);
    oo.quad_order = ctx.cfg.get_int("overlap", "quad_order", 128);
    oo.extrapolate = ctx.cfg.get_bool("overlap", "extrapolate", true);
    oo.casimir_phase = ctx.cfg.get_double("overlap", "casimir_phase", 0.0);

    OverlapValue n1 = overlap_norm(packets, um, 1, geom, oo);
    OverlapValue n2 = overlap_norm(packets, um, 2, geom, oo);
    double norm_den = std::sqrt(std::abs(n1.value) * std::abs(n2.value));
    if (!(norm_den > 0.0)) throw InconsistentInput("packet norm vanished");
    // The raw integrals carry kernel-core truncation error that cancels
    // between F and the norms, so the honest quadrature tolerance is the
    // node-halving difference of the ratio itself, not of the pieces.
    const cdouble n1_raw = oo.extrapolate ? n1.at_eps[2] : n1.at_eps[0];
    const cdouble n2_raw = oo.extrapolate ? n2.at_eps[2] : n2.at_eps[0];
    double den_raw = std::sqrt(std::abs(n1_raw) * std::abs(n2_raw));
    double den_half = std::sqrt(std::abs(n1.at_half) * std::abs(n2.at_half));

    int t_steps = ctx.cfg.get_int("overlap", "t_steps", 1);
    double t_min = ctx.cfg.get_double("overlap", "t_min", t_steps == 1 ? T : 0.8 * T);
    double t_max = ctx.cfg.get_double("overlap", "t_max", 1.2 * T);

    std::string csv = artifact_header(ctx.hash);
    csv += "t,re,im,abs,ratio,quad_tol\n";
    std::vector<double> tcol, ratio;
    double ratio_at_T = 0.0, tol_at_T = 0.0, best_dt = 1e300;
    for (int r = 0; r < t_steps; ++r) {
        double t = t_steps == 1 ? t_min : t_min + (t_max - t_min) * r / (t_steps - 1);
        OverlapValue F = overlap_F(packets, um, t, geom, oo);
        double a = std::abs(F.value);
        double rat = a / norm_den;
        const cdouble f_raw = oo.extrapolate ? F.at_eps[2] : F.at_eps[0];
        double row_tol = std::abs(std::abs(f_raw) / den_raw - std::abs(F.at_half) / den_half);
        csv += csv_line({t, F.value.real(), F.value.imag(), a, rat, row_tol});
        tcol.push_back(t);
        ratio.push_back(rat);
        if (std::abs(t - T) < best_dt) {
            best_dt = std::abs(t - T);
            ratio_at_T = rat;
            tol_at_T = row_tol;
        }
    }
    emit(ctx, "overlap.csv", csv);

    json j{{"command", "overlap"},
           {"T", T},
           {"v0_unfolded", um.v0},
           {"fL", um.fL},
           {"sigma", sigma},
           {"center", center},
           {"k", k},
           {"specular", is_specular(packets)},
           {"norm1_abs", std::abs(n1.value)},
           {"norm2_abs", std::abs(n2.value)},
           {"quad_tol", tol_at_T},
           {"norm_quad_tol", std::max(n1.quad_tol, n2.quad_tol)},
           {"epsilon", n1.eps},
           {"quad_order", oo.quad_order},
           {"ratio_near_T", ratio_at_T}};
    emit_json(ctx, "overlap.json", j);

    if (ctx.args.svg && t_steps > 1) {
        SvgAxes axes{"|F(t)| / norm", "t", "ratio"};
        emit(ctx, "overlap.svg", svg_line_plot(tcol, {ratio}, {"|F|/|N|"}, axes));
    }

    *ctx.out << "overlap: |F|/norm near T = " << format_double(ratio_at_T)
             << ", ratio quad_tol = " << format_double(tol_at_T) << "\n";
    return 0;
}

std::string override_digest(const CliArgs& a, const CLI::App& app) {
    std::string s;
    auto add = [&](const char* name, const std::string& v) {
        s += "\n";
        s += name;
        s += " = ";
        s += v;
    };
    if (app.count("--n-max")) add("n_max", std::to_string(a.n_max));
    if (app.count("--grid")) add("grid", std::to_string(a.grid));
    if (app.count("--eps-spec")) add("eps_spec", format_double(a.eps_spec));
    if (app.count("--epsilon")) add("epsilon", format_double(a.epsilon));
    if (app.count("--modes")) add("modes", std::to_string(a.modes));
    if (a.svg) add("svg", "true");
    return s.empty() ? s : "\n[cli-overrides]" + s;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"perfect wave transfer analysis for inhomogeneous channels"};
    app.set_version_flag("--version", std::string("pwt ") + kVersion);
    CliArgs args;
    app.add_option("--config", args.config_path, "configuration file")->required();
    app.add_option("--out", args.out_dir, "output directory");
    app.add_option("--n-max", args.n_max, "highest level index");
    app.add_option("--grid", args.grid, "grid points (odd)");
    app.add_option("--eps-spec", args.eps_spec, "tower commensuration tolerance");
    app.add_option("--epsilon", args.epsilon, "correlator / overlap regulator");
    app.add_option("--modes", args.modes, "mode count for series and CSV export");
    app.add_flag("--svg", args.svg, "render SVG figures");

    CLI::App* sub[6] = {
        app.add_subcommand("spectrum", "eigenvalues and optional eigenfunctions"),
        app.add_subcommand("check-pwt", "decide perfect wave transfer"),
        app.add_subcommand("correlate", "two-point functions on a space-time grid"),
        app.add_subcommand("invert", "reconstruct the stiffness from a target tower"),
        app.add_subcommand("wkb", "semiclassical phase and moment diagnostics"),
        app.add_subcommand("overlap", "one-particle transfer amplitude"),
    };
    for (CLI::App* s : sub) s->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, const_cast<char**>(argv));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForVersion& e) {
        out << app.version() << "\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        Context ctx;
        ctx.args = args;
        ctx.cfg = parse_ini_file(args.config_path);
        std::filesystem::path cp(args.config_path);
        ctx.cfg_dir = cp.has_parent_path() ? cp.parent_path().string() : ".";
        ctx.hash = fnv1a_hash(ctx.cfg.raw + override_digest(args, app));
        ctx.out = &out;

        if (sub[0]->parsed()) return cmd_spectrum(ctx);
        if (sub[1]->parsed()) return cmd_check_pwt(ctx);
        if (sub[2]->parsed()) return cmd_correlate(ctx);
        if (sub[3]->parsed()) return cmd_invert(ctx);
        if (sub[4]->parsed()) return cmd_wkb(ctx);
        if (sub[5]->parsed()) return cmd_overlap(ctx);
        throw UsageError("no command selected");
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace pwt
