// lab.hpp
// Experiment harness: seeded initial conditions, series/snapshot files,
// the time-step refinement study, and the command-line front end.

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "gflow/schemes.hpp"
#include "gflow/series.hpp"

namespace gflow {

// mean + amp * u, u i.i.d. uniform on [-1,1). The generator is SplitMix64
// run in counter mode over the row-major point index, so the same seed
// reproduces the same field bit for bit on any platform.
Field random_init(GridPtr grid, double mean, double amp, std::uint64_t seed);

// mean + sum_j amp_j * cos(kx[mx_j]*x + ky[my_j]*y); modes are integer
// indices into the grid's wavenumber tables.
struct ModeSpec {
    int mx = 0;
    int my = 0;
    double amp = 0.0;
};
Field modes_init(GridPtr grid, double mean, const std::vector<ModeSpec>& modes);

// CSV with header step,t,energy,modified_energy,eta,branch,gate_value,
// sn_proxy,newton_iters,g_residual,mass; floats carry 17 significant digits.
void write_series(const std::vector<TimeSeriesRecord>& records,
                  const std::string& path);
std::vector<TimeSeriesRecord> read_series(const std::string& path);

// Snapshot formats, chosen by extension: ".csv" writes a row-major matrix
// (one grid row per line); anything else writes the raw format of
// snapshot_format.md: eight little-endian int64 header words
// (magic 0x474c4f57464c4431, version 1, nx, ny, 4 reserved zeros) followed
// by nx*ny little-endian doubles.
void write_snapshot(const Field& f, const std::string& path);
Field read_snapshot(const std::string& path, GridPtr grid);

// Collects records in memory; flush() writes them as CSV. Snapshots go to
// <out_dir>/snapshot_<step>.<ext> as they arrive.
class FileSink : public RunSink {
public:
    FileSink(std::string out_dir, std::string snapshot_ext = "bin");

    void on_record(const TimeSeriesRecord& rec) override;
    void on_snapshot(long step, const Field& f) override;
    void flush();   // writes series.csv

    const std::vector<TimeSeriesRecord>& records() const { return records_; }

private:
    std::string out_dir_;
    std::string snapshot_ext_;
    std::vector<TimeSeriesRecord> records_;
};

struct ConvergenceReport {
    std::vector<double> dts;
    std::vector<double> errors;           // L2 at t_effective vs reference
    std::vector<double> observed_orders;  // log ratio of consecutive errors
    double t_effective = 0.0;             // largest step-aligned time <= T
    double dt_ref = 0.0;
    std::string scheme;
};

// Self-convergence study: runs the template's scheme at every dt in dts
// (strictly decreasing, no duplicates) plus a reference at min(dts)/8, and
// compares final fields in L2. All runs are compared at the largest time
// <= T that every dt and the reference dt divide; when the dts divide T
// exactly that time is T itself.
ConvergenceReport convergence_study(const RunConfig& tmpl, const Field& phi0,
                                    const std::vector<double>& dts, double T);

void print_report(const ConvergenceReport& rep, std::ostream& os);

// CLI front end (subcommands run, converge, fig1). Returns 0 on success,
// 1 on configuration errors, 2 on a solver failure (failing step logged).
int cli_main(const std::vector<std::string>& args);

} // namespace gflow
