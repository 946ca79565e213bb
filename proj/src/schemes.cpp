// schemes.cpp
// Step recipes. Both Lagrange multiplier steppers share one root-solving
// path so that a modified step that passes its gate reproduces the original
// step bit for bit.

#include "gflow/schemes.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "gflow/kernels.hpp"

namespace gflow {

const char* scheme_name(SchemeKind s) {
    switch (s) {
        case SchemeKind::original_lm: return "original-lm";
        case SchemeKind::modified_lm: return "modified-lm";
        case SchemeKind::sav_cn: return "sav-cn";
    }
    return "?";
}

SchemeKind parse_scheme(const std::string& name) {
    if (name == "original-lm") return SchemeKind::original_lm;
    if (name == "modified-lm") return SchemeKind::modified_lm;
    if (name == "sav-cn") return SchemeKind::sav_cn;
    throw std::invalid_argument("unknown scheme: " + name);
}

void RunConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
    if (!(t_final >= dt)) throw std::invalid_argument("t_final must be >= dt");
    if (gamma >= 0.0 && !std::isfinite(gamma))
        throw std::invalid_argument("gamma must be finite");
    if (!(eta_tol > 0.0)) throw std::invalid_argument("eta_tol must be positive");
    if (snapshot_every < 0)
        throw std::invalid_argument("snapshot_every must be >= 0");
    if (sav_c0 < 0.0) throw std::invalid_argument("sav_c0 must be >= 0");
}

StepContext::StepContext(GridPtr grid, const FlowSpec& spec)
    : sig_l(spec.sigma_L(grid)),
      sig_g(spec.sigma_G(grid)),
      sig_gl(spec.sigma_GL(grid)) {}

SchemeState bootstrap(const Field& phi0, const RunConfig& cfg) {
    if (!phi0.is_finite())
        throw std::invalid_argument("initial field contains non-finite values");
    SchemeState st{phi0, phi0, 0.0, 0, std::nullopt, cfg.sav_c0};
    if (cfg.scheme == SchemeKind::sav_cn) {
        double bulk = bulk_energy(phi0);
        if (bulk + st.sav_c0 <= 0.0) st.sav_c0 = 1.0;  // auto shift
        if (bulk + st.sav_c0 <= 0.0)
            throw std::invalid_argument("SAV shifted bulk energy is nonpositive");
        st.sav_r = std::sqrt(bulk + st.sav_c0);
    }
    return st;
}

namespace {

Field extrapolate_star(const SchemeState& s) {
    Field star(s.phi_n.grid_ptr());
    kernels::lincomb(star.data(), 1.5, s.phi_n.data(), -0.5, s.phi_nm1.data(),
                     star.size());
    return star;
}

struct LmParts {
    Field phi_star;
    Field p;
    Field q;
};

LmParts lm_parts(const SchemeState& s, const RunConfig& cfg,
                 const StepContext& ctx) {
    Field star = extrapolate_star(s);
    Field p = compute_p(s.phi_n, s.phi_nm1, ctx.sig_gl, cfg.dt);
    Field q = compute_q(star, ctx.sig_gl, ctx.sig_g, cfg.dt);
    return {std::move(star), std::move(p), std::move(q)};
}

void fill_diagnostics(StepOutcome& out, const SchemeState& s,
                      const RunConfig& cfg) {
    out.energy = total_energy(out.phi_next, cfg.flow);
    out.modified_energy = modified_energy(out.phi_next, s.phi_n, cfg.flow);
    out.mass = mean(out.phi_next);
    out.sn = sn_proxy(s.phi_n, s.phi_nm1, cfg.dt);
}

// Shared root-solving branch; throws SolvabilityError, and flags
// degeneracy through the report.
StepOutcome lm_root_branch(const LmParts& parts, const SchemeState& s,
                           const RunConfig& cfg) {
    QuarticPoly poly =
        assemble_g(parts.p, parts.q, s.phi_n, parts.phi_star, cfg.dt);
    double field_scale = std::max(1.0, std::abs(bulk_energy(s.phi_n)));
    EtaSolveReport rep = solve_eta(poly, cfg.dt, cfg.eta_tol, field_scale);

    Field phi_next(s.phi_n.grid_ptr());
    kernels::axpy(phi_next.data(), parts.p.data(), rep.eta * cfg.dt,
                  parts.q.data(), phi_next.size());
    StepOutcome out{std::move(phi_next)};
    out.eta = rep.eta;
    out.branch = Branch::root_solved;
    out.solver = rep;
    return out;
}

} // namespace

StepOutcome step_original_lm(const SchemeState& s, const RunConfig& cfg,
                             const StepContext& ctx) {
    LmParts parts = lm_parts(s, cfg, ctx);
    StepOutcome out = lm_root_branch(parts, s, cfg);  // throws SolvabilityError
    if (out.solver->degenerate)
        throw StepFailure(StepFailure::Kind::degenerate,
                          "multiplier equation degenerate (g == 0): state is at "
                          "an equilibrium",
                          *out.solver);
    fill_diagnostics(out, s, cfg);
    return out;
}

StepOutcome step_modified_lm(const SchemeState& s, const RunConfig& cfg,
                             const StepContext& ctx) {
    LmParts parts = lm_parts(s, cfg, ctx);

    // eta = 1 candidate and its gate value
    Field phi_tilde(s.phi_n.grid_ptr());
    kernels::axpy(phi_tilde.data(), parts.p.data(), cfg.dt, parts.q.data(),
                  phi_tilde.size());
    const double gate = gate_metric(phi_tilde, s.phi_n, cfg.dt);
    const double gamma = cfg.gate_gamma();

    if (gate > gamma) {
        try {
            StepOutcome out = lm_root_branch(parts, s, cfg);
            if (!out.solver->degenerate) {
                out.gate_value = gate;
                fill_diagnostics(out, s, cfg);
                return out;
            }
            // degenerate counts as a failed solve: fall through to the gate
        } catch (const SolvabilityError&) {
        }
        StepOutcome out{std::move(phi_tilde)};
        out.eta = 1.0;
        out.branch = Branch::gated_eta_one;
        out.gate_value = gate;
        out.gate_fallback = true;
        fill_diagnostics(out, s, cfg);
        return out;
    }

    StepOutcome out{std::move(phi_tilde)};
    out.eta = 1.0;
    out.branch = Branch::gated_eta_one;
    out.gate_value = gate;
    fill_diagnostics(out, s, cfg);
    return out;
}

StepOutcome step_sav_cn(const SchemeState& s, const RunConfig& cfg,
                        const StepContext& ctx) {
    if (!s.sav_r)
        throw std::invalid_argument("SAV step requires a bootstrapped sav_r");
    const double dt = cfg.dt;
    const double r_n = *s.sav_r;

    Field phi_star = extrapolate_star(s);
    double shifted = bulk_energy(phi_star) + s.sav_c0;
    if (!(shifted > 0.0))
        throw StepFailure(StepFailure::Kind::sav_shift,
                          "SAV shifted bulk energy is nonpositive");

    // b = F'(phi_star) / sqrt(int F(phi_star) + C0)
    Field b = potential_Fprime(phi_star);
    const double inv_root = 1.0 / std::sqrt(shifted);
    kernels::lincomb(b.data(), inv_root, b.data(), 0.0, b.data(), b.size());

    const auto& sgl = ctx.sig_gl.values();
    const auto& sg = ctx.sig_g.values();

    // u = (I + dt/2 GL)^{-1} (I - dt/2 GL) phi_n
    SpectralField U = fft_forward(s.phi_n);
    kernels::scaled_symbol_axpy(U.data(), U.data(), sgl.data(), -0.5 * dt,
                                U.size());
    kernels::resolvent_divide(U.data(), sgl.data(), 0.5 * dt, U.size());
    Field u = fft_inverse(U);

    // v = dt (I + dt/2 GL)^{-1} G b
    SpectralField V = fft_forward(b);
    kernels::scaled_symbol_multiply(V.data(), sg.data(), dt, V.size());
    kernels::resolvent_divide(V.data(), sgl.data(), 0.5 * dt, V.size());
    Field v = fft_inverse(V);

    // rho = (r^{n+1} + r^n)/2 from the scalar closure
    Field du(s.phi_n.grid_ptr());
    kernels::lincomb(du.data(), 1.0, u.data(), -1.0, s.phi_n.data(), du.size());
    const double rho =
        (r_n + 0.25 * inner_product(b, du)) / (1.0 + 0.25 * inner_product(b, v));

    Field phi_next(s.phi_n.grid_ptr());
    kernels::lincomb(phi_next.data(), 1.0, u.data(), -rho, v.data(),
                     phi_next.size());
    const double r_next = 2.0 * rho - r_n;

    StepOutcome out{std::move(phi_next)};
    out.eta = 1.0;
    out.branch = Branch::sav;
    out.sav_r_next = r_next;
    out.energy = total_energy(out.phi_next, cfg.flow);
    SpectralField P = fft_forward(out.phi_next);
    out.modified_energy = 0.5 * spectral_quadratic(P, ctx.sig_l) + r_next * r_next;
    out.mass = mean(out.phi_next);
    out.sn = sn_proxy(s.phi_n, s.phi_nm1, cfg.dt);
    return out;
}

StepOutcome step_original_lm(const SchemeState& s, const RunConfig& cfg) {
    return step_original_lm(s, cfg, StepContext(s.phi_n.grid_ptr(), cfg.flow));
}
StepOutcome step_modified_lm(const SchemeState& s, const RunConfig& cfg) {
    return step_modified_lm(s, cfg, StepContext(s.phi_n.grid_ptr(), cfg.flow));
}
StepOutcome step_sav_cn(const SchemeState& s, const RunConfig& cfg) {
    return step_sav_cn(s, cfg, StepContext(s.phi_n.grid_ptr(), cfg.flow));
}

void advance(SchemeState& s, StepOutcome&& out, double dt) {
    s.phi_nm1 = std::move(s.phi_n);
    s.phi_n = std::move(out.phi_next);
    s.step += 1;
    s.t = double(s.step) * dt;
    if (out.sav_r_next) s.sav_r = out.sav_r_next;
}

SchemeState run(const RunConfig& cfg, const Field& phi0, RunSink& sink) {
    cfg.validate();
    const Grid& g = phi0.grid();
    if (g.nx() != cfg.nx || g.ny() != cfg.ny)
        throw std::invalid_argument("initial field does not match config grid");

    const long nsteps = std::lround(cfg.t_final / cfg.dt);
    if (nsteps < 1) throw std::invalid_argument("t_final shorter than one step");

    StepContext ctx(phi0.grid_ptr(), cfg.flow);
    SchemeState state = bootstrap(phi0, cfg);
    if (cfg.snapshot_every > 0) sink.on_snapshot(0, state.phi_n);

    for (long n = 0; n < nsteps; ++n) {
        StepOutcome out = [&] {
            try {
                switch (cfg.scheme) {
                    case SchemeKind::original_lm:
                        return step_original_lm(state, cfg, ctx);
                    case SchemeKind::modified_lm:
                        return step_modified_lm(state, cfg, ctx);
                    case SchemeKind::sav_cn:
                        return step_sav_cn(state, cfg, ctx);
                }
                throw std::logic_error("unreachable scheme kind");
            } catch (const SolvabilityError& e) {
                StepFailure f(StepFailure::Kind::solvability, e.what(), e.report);
                f.step = n + 1;
                f.t = double(n + 1) * cfg.dt;
                throw f;
            } catch (StepFailure& f) {
                f.step = n + 1;
                f.t = double(n + 1) * cfg.dt;
                throw;
            }
        }();

        if (!out.phi_next.is_finite()) {
            StepFailure f(StepFailure::Kind::nonfinite,
                          "step produced a non-finite field");
            f.step = n + 1;
            f.t = double(n + 1) * cfg.dt;
            throw f;
        }

        TimeSeriesRecord rec;
        rec.step = n + 1;
        rec.t = double(n + 1) * cfg.dt;
        rec.energy = out.energy;
        rec.modified_energy = out.modified_energy;
        rec.eta = out.eta;
        rec.branch = out.branch;
        rec.gate_value = out.gate_value;
        rec.sn_proxy = out.sn;
        rec.newton_iters = out.solver ? out.solver->iterations : 0;
        rec.g_residual = out.solver ? out.solver->residual : 0.0;
        rec.mass = out.mass;
        sink.on_record(rec);

        const bool snap =
            cfg.snapshot_every > 0 && (n + 1) % cfg.snapshot_every == 0;
        if (snap) sink.on_snapshot(n + 1, out.phi_next);

        advance(state, std::move(out), cfg.dt);
    }
    return state;
}

} // namespace gflow
