// series.hpp
// Per-step diagnostics record and the sink interface the run loop feeds.

#pragma once

#include <cstdint>

#include "gflow/field.hpp"

namespace gflow {

enum class Branch { root_solved, gated_eta_one, sav };

const char* branch_name(Branch b);
Branch parse_branch(const std::string& name);

struct TimeSeriesRecord {
    long step = 0;
    double t = 0.0;
    double energy = 0.0;
    double modified_energy = 0.0;
    double eta = 1.0;
    Branch branch = Branch::root_solved;
    double gate_value = 0.0;
    double sn_proxy = 0.0;
    int newton_iters = 0;
    double g_residual = 0.0;
    double mass = 0.0;
};

// Receives one record per step, plus periodic field snapshots. Records
// arrive in step order from the thread driving the run.
class RunSink {
public:
    virtual ~RunSink() = default;
    virtual void on_record(const TimeSeriesRecord&) {}
    virtual void on_snapshot(long /*step*/, const Field&) {}
};

} // namespace gflow
