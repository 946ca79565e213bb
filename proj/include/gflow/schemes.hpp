// schemes.hpp
// Time steppers for the gradient flow: the original Lagrange multiplier
// scheme, the gated modified variant, and a Crank-Nicolson SAV stepper
// used as a comparison baseline, plus the run loop.

#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "gflow/multiplier.hpp"
#include "gflow/potential.hpp"
#include "gflow/series.hpp"

namespace gflow {

enum class SchemeKind { original_lm, modified_lm, sav_cn };

const char* scheme_name(SchemeKind s);
SchemeKind parse_scheme(const std::string& name);

struct RunConfig {
    FlowSpec flow;
    int nx = 128, ny = 128;
    double lx = 0.0, ly = 0.0;   // 2*pi when left at 0
    double dt = 1e-3;
    double t_final = 0.05;
    double gamma = -1.0;         // gate tolerance; < 0 means "use dt"
    SchemeKind scheme = SchemeKind::modified_lm;
    std::uint64_t seed = 42;
    double eta_tol = 1e-12;
    long snapshot_every = 0;     // 0 disables snapshots
    double sav_c0 = 0.0;

    double gate_gamma() const { return gamma < 0.0 ? dt : gamma; }
    void validate() const;       // throws std::invalid_argument
};

struct SchemeState {
    Field phi_n;
    Field phi_nm1;
    double t = 0.0;
    long step = 0;
    std::optional<double> sav_r;  // SAV auxiliary scalar, LM schemes ignore it
    double sav_c0 = 0.0;          // energy shift resolved at bootstrap
};

struct StepOutcome {
    Field phi_next;
    double eta = 1.0;
    Branch branch = Branch::root_solved;
    double gate_value = 0.0;
    std::optional<EtaSolveReport> solver;
    bool gate_fallback = false;   // modified scheme took eta=1 after a failed solve
    std::optional<double> sav_r_next;
    double energy = 0.0;
    double modified_energy = 0.0; // LM: E + jump term; SAV: 1/2(L phi,phi) + r^2
    double mass = 0.0;
    double sn = 0.0;
};

// A step failed in a way the scheme cannot recover from.
class StepFailure : public std::runtime_error {
public:
    enum class Kind { solvability, degenerate, nonfinite, sav_shift };

    StepFailure(Kind kind, const std::string& what, EtaSolveReport report = {})
        : std::runtime_error(what), kind(kind), report(report) {}

    Kind kind;
    EtaSolveReport report;
    long step = -1;   // filled by the run loop
    double t = 0.0;
};

// Symbols precomputed once per run; steppers accept one to avoid
// re-tabulating three symbol arrays every step.
struct StepContext {
    StepContext(GridPtr grid, const FlowSpec& spec);

    FourierSymbol sig_l;
    FourierSymbol sig_g;
    FourierSymbol sig_gl;
};

// phi^{-1} = phi^0 start; for SAV also r^0 = sqrt(int F(phi0) + C0), with
// C0 bumped to 1 if the shifted bulk energy would not be positive.
SchemeState bootstrap(const Field& phi0, const RunConfig& cfg);

StepOutcome step_original_lm(const SchemeState& s, const RunConfig& cfg,
                             const StepContext& ctx);
StepOutcome step_modified_lm(const SchemeState& s, const RunConfig& cfg,
                             const StepContext& ctx);
StepOutcome step_sav_cn(const SchemeState& s, const RunConfig& cfg,
                        const StepContext& ctx);

StepOutcome step_original_lm(const SchemeState& s, const RunConfig& cfg);
StepOutcome step_modified_lm(const SchemeState& s, const RunConfig& cfg);
StepOutcome step_sav_cn(const SchemeState& s, const RunConfig& cfg);

// Executes outcome -> state shift (phi_n becomes phi_nm1 and so on).
void advance(SchemeState& s, StepOutcome&& out, double dt);

// Fixed-step loop from t = 0 to t_final (= round(t_final/dt) steps).
// Emits one TimeSeriesRecord per step and a snapshot every snapshot_every
// steps; rejects non-finite fields; StepFailure is rethrown with the step
// index and time attached.
SchemeState run(const RunConfig& cfg, const Field& phi0, RunSink& sink);

} // namespace gflow
