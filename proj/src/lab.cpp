// lab.cpp
// Initial conditions, file formats, the refinement study, and the CLI.

#include "gflow/lab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "gflow/kernels.hpp"

namespace fs = std::filesystem;

namespace gflow {

const char* branch_name(Branch b) {
    switch (b) {
        case Branch::root_solved: return "root-solved";
        case Branch::gated_eta_one: return "gated-eta-one";
        case Branch::sav: return "sav";
    }
    return "?";
}

Branch parse_branch(const std::string& name) {
    if (name == "root-solved") return Branch::root_solved;
    if (name == "gated-eta-one") return Branch::gated_eta_one;
    if (name == "sav") return Branch::sav;
    throw std::invalid_argument("unknown branch: " + name);
}

// ---- initial conditions ----------------------------------------------------

namespace {

// SplitMix64 output function; evaluated in counter mode so every grid
// point draws an independent word from the (seed, index) pair.
inline std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// top 53 bits -> [0,1), then stretched to [-1,1)
inline double uniform_pm1(std::uint64_t word) {
    return 2.0 * (double(word >> 11) * 0x1.0p-53) - 1.0;
}

} // namespace

Field random_init(GridPtr grid, double mean, double amp, std::uint64_t seed) {
    if (amp < 0.0) throw std::invalid_argument("amplitude must be >= 0");
    Field f(std::move(grid));
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = mean + amp * uniform_pm1(splitmix64_at(seed, i));
    return f;
}

Field modes_init(GridPtr grid, double mean, const std::vector<ModeSpec>& modes) {
    Field f(std::move(grid), mean);
    const Grid& g = f.grid();
    for (const ModeSpec& m : modes) {
        const int mx = ((m.mx % g.nx()) + g.nx()) % g.nx();
        const int my = ((m.my % g.ny()) + g.ny()) % g.ny();
        const double kx = g.kx()[mx];
        const double ky = g.ky()[my];
        for (int i = 0; i < g.nx(); ++i) {
            const double x = i * g.dx();
            for (int j = 0; j < g.ny(); ++j)
                f.at(i, j) += m.amp * std::cos(kx * x + ky * (j * g.dy()));
        }
    }
    return f;
}

// ---- series CSV ------------------------------------------------------------

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void write_series(const std::vector<TimeSeriesRecord>& records,
                  const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open series file: " + path);
    os << "step,t,energy,modified_energy,eta,branch,gate_value,sn_proxy,"
          "newton_iters,g_residual,mass\n";
    for (const auto& r : records) {
        os << r.step << ',' << fmt17(r.t) << ',' << fmt17(r.energy) << ','
           << fmt17(r.modified_energy) << ',' << fmt17(r.eta) << ','
           << branch_name(r.branch) << ',' << fmt17(r.gate_value) << ','
           << fmt17(r.sn_proxy) << ',' << r.newton_iters << ','
           << fmt17(r.g_residual) << ',' << fmt17(r.mass) << '\n';
    }
    if (!os) throw std::runtime_error("write failed: " + path);
}

std::vector<TimeSeriesRecord> read_series(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open series file: " + path);
    std::string line;
    if (!std::getline(is, line))
        throw std::runtime_error("empty series file: " + path);

    std::vector<TimeSeriesRecord> records;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        auto next = [&] {
            if (!std::getline(ss, tok, ','))
                throw std::runtime_error("short series row in " + path);
            return tok;
        };
        TimeSeriesRecord r;
        r.step = std::stol(next());
        r.t = std::stod(next());
        r.energy = std::stod(next());
        r.modified_energy = std::stod(next());
        r.eta = std::stod(next());
        r.branch = parse_branch(next());
        r.gate_value = std::stod(next());
        r.sn_proxy = std::stod(next());
        r.newton_iters = std::stoi(next());
        r.g_residual = std::stod(next());
        r.mass = std::stod(next());
        records.push_back(r);
    }
    return records;
}

// ---- snapshots ---------------------------------------------------------

namespace {

constexpr std::int64_t kSnapshotMagic = 0x474c4f57464c4431;  // "GLOWFLD1"
constexpr std::int64_t kSnapshotVersion = 1;

bool has_csv_extension(const std::string& path) {
    return fs::path(path).extension() == ".csv";
}

void put_le64(std::ofstream& os, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xff);
    os.write(b, 8);
}

std::uint64_t get_le64(std::ifstream& is, const std::string& path) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8))
        throw std::runtime_error("truncated snapshot: " + path);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(b[i]) << (8 * i);
    return v;
}

} // namespace

void write_snapshot(const Field& f, const std::string& path) {
    const Grid& g = f.grid();
    if (has_csv_extension(path)) {
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open snapshot file: " + path);
        for (int i = 0; i < g.nx(); ++i) {
            for (int j = 0; j < g.ny(); ++j) {
                if (j) os << ',';
                os << fmt17(f.at(i, j));
            }
            os << '\n';
        }
        if (!os) throw std::runtime_error("write failed: " + path);
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open snapshot file: " + path);
    put_le64(os, kSnapshotMagic);
    put_le64(os, kSnapshotVersion);
    put_le64(os, std::uint64_t(g.nx()));
    put_le64(os, std::uint64_t(g.ny()));
    for (int i = 0; i < 4; ++i) put_le64(os, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
        put_le64(os, std::bit_cast<std::uint64_t>(f[i]));
    if (!os) throw std::runtime_error("write failed: " + path);
}

Field read_snapshot(const std::string& path, GridPtr grid) {
    const Grid& g = *grid;
    if (has_csv_extension(path)) {
        std::ifstream is(path);
        if (!is) throw std::runtime_error("cannot open snapshot file: " + path);
        Field f(std::move(grid));
        std::string line;
        for (int i = 0; i < g.nx(); ++i) {
            if (!std::getline(is, line))
                throw std::runtime_error("snapshot has too few rows: " + path);
            std::stringstream ss(line);
            std::string tok;
            for (int j = 0; j < g.ny(); ++j) {
                if (!std::getline(ss, tok, ','))
                    throw std::runtime_error("snapshot row too short: " + path);
                f.at(i, j) = std::stod(tok);
            }
        }
        return f;
    }
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open snapshot file: " + path);
    if (std::int64_t(get_le64(is, path)) != kSnapshotMagic)
        throw std::runtime_error("bad snapshot magic: " + path);
    if (std::int64_t(get_le64(is, path)) != kSnapshotVersion)
        throw std::runtime_error("unsupported snapshot version: " + path);
    const auto nx = std::int64_t(get_le64(is, path));
    const auto ny = std::int64_t(get_le64(is, path));
    for (int i = 0; i < 4; ++i) get_le64(is, path);
    if (nx != g.nx() || ny != g.ny())
        throw std::runtime_error("snapshot dimensions do not match grid: " + path);
    Field f(std::move(grid));
    for (std::size_t i = 0; i < f.size(); ++i)
        f[i] = std::bit_cast<double>(get_le64(is, path));
    return f;
}

// ---- sink -------------------------------------------------------------

FileSink::FileSink(std::string out_dir, std::string snapshot_ext)
    : out_dir_(std::move(out_dir)), snapshot_ext_(std::move(snapshot_ext)) {
    fs::create_directories(out_dir_);
}

void FileSink::on_record(const TimeSeriesRecord& rec) { records_.push_back(rec); }

void FileSink::on_snapshot(long step, const Field& f) {
    char name[64];
    std::snprintf(name, sizeof(name), "snapshot_%06ld.%s", step,
                  snapshot_ext_.c_str());
    write_snapshot(f, (fs::path(out_dir_) / name).string());
}

void FileSink::flush() {
    write_series(records_, (fs::path(out_dir_) / "series.csv").string());
}

// ---- convergence study -------------------------------------------------

namespace {

bool divides(double t, double dt) {
    double r = t / dt;
    return std::abs(r - std::llround(r)) <= 1e-8 * std::max(1.0, std::abs(r));
}

struct NullSink : RunSink {};

} // namespace

ConvergenceReport convergence_study(const RunConfig& tmpl, const Field& phi0,
                                    const std::vector<double>& dts, double T) {
    if (dts.size() < 2)
        throw std::invalid_argument("need at least two time steps to compare");
    for (std::size_t i = 0; i < dts.size(); ++i) {
        if (!(dts[i] > 0.0)) throw std::invalid_argument("time steps must be positive");
        if (i && !(dts[i] < dts[i - 1]))
            throw std::invalid_argument("time steps must be strictly decreasing");
    }
    const double dt_ref = dts.back() / 8.0;
    if (!(T >= dts.front()))
        throw std::invalid_argument("T must cover at least one coarse step");

    // Largest time <= T that every run hits exactly; equals T whenever all
    // dts divide T.
    double t_eff = 0.0;
    for (long m = std::llround(std::floor(T / dts.front() + 1e-9)); m >= 1; --m) {
        double t = double(m) * dts.front();
        if (t > T * (1.0 + 1e-12)) continue;
        bool ok = divides(t, dt_ref);
        for (double dt : dts) ok = ok && divides(t, dt);
        if (ok) {
            t_eff = t;
            break;
        }
    }
    if (t_eff == 0.0)
        throw std::invalid_argument(
            "no common step-aligned comparison time at or below T");

    auto final_field = [&](double dt) {
        RunConfig cfg = tmpl;
        cfg.dt = dt;
        cfg.t_final = t_eff;
        NullSink sink;
        return run(cfg, phi0, sink).phi_n;
    };

    Field ref = final_field(dt_ref);

    ConvergenceReport rep;
    rep.dts = dts;
    rep.dt_ref = dt_ref;
    rep.t_effective = t_eff;
    rep.scheme = scheme_name(tmpl.scheme);
    for (double dt : dts) {
        Field sol = final_field(dt);
        Field diff(sol.grid_ptr());
        kernels::lincomb(diff.data(), 1.0, sol.data(), -1.0, ref.data(),
                         diff.size());
        rep.errors.push_back(l2_norm(diff));
    }
    for (std::size_t i = 0; i + 1 < dts.size(); ++i)
        rep.observed_orders.push_back(std::log(rep.errors[i] / rep.errors[i + 1]) /
                                      std::log(dts[i] / dts[i + 1]));
    return rep;
}

void print_report(const ConvergenceReport& rep, std::ostream& os) {
    os << "# self-convergence study, scheme=" << rep.scheme
       << ", reference dt=" << fmt17(rep.dt_ref)
       << ", compared at t=" << fmt17(rep.t_effective) << "\n";
    os << "dt,l2_error,observed_order\n";
    for (std::size_t i = 0; i < rep.dts.size(); ++i) {
        os << fmt17(rep.dts[i]) << ',' << fmt17(rep.errors[i]) << ',';
        if (i == 0)
            os << "-";
        else
            os << fmt17(rep.observed_orders[i - 1]);
        os << '\n';
    }
}

// ---- CLI ----------------------------------------------------------------

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct CliOptions {
    std::string scheme = "modified-lm";
    std::string flow = "cahn-hilliard";
    int nx = 128, ny = 128;
    double lx = kTwoPi, ly = kTwoPi;
    double eps2 = 0.06;
    double dt = 1e-3;
    double tfinal = 0.05;
    double gamma = -1.0;  // default: gamma = dt
    std::uint64_t seed = 42;
    double mean = 0.0;
    double amp = 0.01;
    double eta_tol = 1e-12;
    long snapshot_every = 0;
    double sav_c0 = 0.0;
    std::string out_dir = "out";
    std::string init = "random";
    std::string dts = "8e-4,4e-4,2e-4";
};

void add_run_options(CLI::App* cmd, CliOptions& o) {
    cmd->add_option("--scheme", o.scheme, "original-lm | modified-lm | sav-cn");
    cmd->add_option("--flow", o.flow, "cahn-hilliard | allen-cahn");
    cmd->add_option("--nx", o.nx);
    cmd->add_option("--ny", o.ny);
    cmd->add_option("--lx", o.lx);
    cmd->add_option("--ly", o.ly);
    cmd->add_option("--eps2", o.eps2, "interface width parameter");
    cmd->add_option("--dt", o.dt);
    cmd->add_option("--tfinal", o.tfinal);
    cmd->add_option("--gamma", o.gamma, "gate tolerance (default: dt)");
    cmd->add_option("--seed", o.seed);
    cmd->add_option("--mean", o.mean, "initial mean value");
    cmd->add_option("--amp", o.amp, "initial perturbation amplitude");
    cmd->add_option("--eta-tol", o.eta_tol);
    cmd->add_option("--snapshot-every", o.snapshot_every);
    cmd->add_option("--sav-c0", o.sav_c0, "SAV energy shift");
    cmd->add_option("--out-dir", o.out_dir);
    cmd->add_option("--init", o.init,
                    "random | modes:mx,my,amp[;mx,my,amp...] | file:path");
}

std::vector<ModeSpec> parse_modes(const std::string& body) {
    std::vector<ModeSpec> modes;
    std::stringstream ss(body);
    std::string group;
    while (std::getline(ss, group, ';')) {
        if (group.empty()) continue;
        ModeSpec m;
        if (std::sscanf(group.c_str(), "%d,%d,%lf", &m.mx, &m.my, &m.amp) != 3)
            throw std::invalid_argument("bad mode spec: " + group);
        modes.push_back(m);
    }
    if (modes.empty()) throw std::invalid_argument("empty mode list");
    return modes;
}

Field build_init(const CliOptions& o, const GridPtr& grid) {
    if (o.init == "random") return random_init(grid, o.mean, o.amp, o.seed);
    if (o.init.rfind("modes:", 0) == 0)
        return modes_init(grid, o.mean, parse_modes(o.init.substr(6)));
    if (o.init.rfind("file:", 0) == 0)
        return read_snapshot(o.init.substr(5), grid);
    throw std::invalid_argument("unknown init spec: " + o.init);
}

RunConfig build_config(const CliOptions& o) {
    RunConfig cfg;
    cfg.flow = parse_flow(o.flow, o.eps2);
    cfg.nx = o.nx;
    cfg.ny = o.ny;
    cfg.lx = o.lx;
    cfg.ly = o.ly;
    cfg.dt = o.dt;
    cfg.t_final = o.tfinal;
    cfg.gamma = o.gamma;
    cfg.scheme = parse_scheme(o.scheme);
    cfg.seed = o.seed;
    cfg.eta_tol = o.eta_tol;
    cfg.snapshot_every = o.snapshot_every;
    cfg.sav_c0 = o.sav_c0;
    cfg.validate();
    return cfg;
}

std::vector<double> parse_dts(const std::string& list) {
    std::vector<double> dts;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) dts.push_back(std::stod(tok));
    return dts;
}

int do_run(const CliOptions& o) {
    RunConfig cfg = build_config(o);
    GridPtr grid = make_grid(o.nx, o.ny, o.lx, o.ly);
    Field phi0 = build_init(o, grid);
    FileSink sink(o.out_dir);

    const double e0 = total_energy(phi0, cfg.flow);
    try {
        SchemeState final = run(cfg, phi0, sink);
        sink.flush();
        long gated = 0;
        for (const auto& r : sink.records())
            if (r.branch == Branch::gated_eta_one) ++gated;
        std::cout << "completed steps=" << final.step << " t=" << fmt17(final.t)
                  << " initial_energy=" << fmt17(e0)
                  << " final_energy=" << fmt17(total_energy(final.phi_n, cfg.flow))
                  << " gated_steps=" << gated << "\n";
        std::cout << "series: " << (fs::path(o.out_dir) / "series.csv").string()
                  << "\n";
        return 0;
    } catch (const StepFailure& f) {
        sink.flush();  // keep the series up to the failure
        std::cerr << "solver failure at step " << f.step << " (t=" << fmt17(f.t)
                  << "): " << f.what() << "\n";
        std::cerr << "series up to failure: "
                  << (fs::path(o.out_dir) / "series.csv").string() << "\n";
        return 2;
    }
}

int do_converge(const CliOptions& o) {
    RunConfig cfg = build_config(o);
    GridPtr grid = make_grid(o.nx, o.ny, o.lx, o.ly);
    Field phi0 = build_init(o, grid);

    std::vector<double> dts = parse_dts(o.dts);
    try {
        ConvergenceReport rep = convergence_study(cfg, phi0, dts, o.tfinal);
        print_report(rep, std::cout);
        if (!o.out_dir.empty()) {
            fs::create_directories(o.out_dir);
            std::ofstream os(fs::path(o.out_dir) / "convergence.csv");
            print_report(rep, os);
        }
        return 0;
    } catch (const StepFailure& f) {
        std::cerr << "study aborted: solver failure at step " << f.step
                  << " (t=" << fmt17(f.t) << "): " << f.what() << "\n";
        return 2;
    }
}

} // namespace

int cli_main(const std::vector<std::string>& args) {
    CLI::App app{"Pseudo-spectral Cahn-Hilliard / Allen-Cahn lab with "
                 "Lagrange-multiplier and SAV time stepping"};
    app.require_subcommand(1);

    CliOptions run_o;
    CLI::App* run_cmd = app.add_subcommand("run", "integrate one configuration");
    add_run_options(run_cmd, run_o);

    CliOptions conv_o;
    conv_o.init = "modes:1,0,1e-3;2,1,1e-3";
    conv_o.mean = 0.3;
    conv_o.nx = 64;
    conv_o.ny = 64;
    conv_o.tfinal = 0.01;
    CLI::App* conv_cmd =
        app.add_subcommand("converge", "time-step refinement study");
    add_run_options(conv_cmd, conv_o);
    conv_cmd->add_option("--dts", conv_o.dts, "comma list of time steps");

    CliOptions fig_o;
    fig_o.mean = 0.3;
    fig_o.amp = 0.01;
    fig_o.eps2 = 0.06;
    fig_o.out_dir = "fig1_out";
    CLI::App* fig_cmd = app.add_subcommand(
        "fig1", "spinodal decomposition preset (eps2=0.06, mean=0.3, amp=0.01, "
                "gamma=dt)");
    fig_cmd->add_option("--scheme", fig_o.scheme);
    fig_cmd->add_option("--dt", fig_o.dt);
    fig_cmd->add_option("--tfinal", fig_o.tfinal);
    fig_cmd->add_option("--nx", fig_o.nx);
    fig_cmd->add_option("--ny", fig_o.ny);
    fig_cmd->add_option("--seed", fig_o.seed);
    fig_cmd->add_option("--eta-tol", fig_o.eta_tol);
    fig_cmd->add_option("--snapshot-every", fig_o.snapshot_every);
    fig_cmd->add_option("--out-dir", fig_o.out_dir);

    std::vector<std::string> argv(args);
    std::reverse(argv.begin(), argv.end());  // CLI11 wants reversed args
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (run_cmd->parsed()) return do_run(run_o);
        if (conv_cmd->parsed()) return do_converge(conv_o);
        return do_run(fig_o);  // fig1 is a preset run
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace gflow
