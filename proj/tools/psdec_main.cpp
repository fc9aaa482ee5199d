// psdec: build, transform, evolve, measure, and plot phase-space states.
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <variant>

#include <CLI11.hpp>

#include "psdec/analysis.hpp"
#include "psdec/heatmap.hpp"
#include "psdec/io.hpp"
#include "psdec/lindblad.hpp"
#include "psdec/povm.hpp"
#include "psdec/scenario.hpp"
#include "psdec/version.hpp"

namespace {

using namespace psdec;

struct StateOpts {
    std::string kind = "coherent";
    double x0 = 0.0, p0 = 0.0, separation = 6.0, phase = 0.0, sigma = 1.0;
    int fock_n = 0;
    int n = 256;
    double half_width = 10.0;
    std::string out, density_out, wigner_out;
};

void run_state(const StateOpts& o) {
    InitialStateConfig cfg;
    cfg.kind = o.kind;
    cfg.x0 = o.x0;
    cfg.p0 = o.p0;
    cfg.separation = o.separation;
    cfg.phase = o.phase;
    cfg.sigma = o.sigma;
    cfg.fock_n = o.fock_n;

    const Grid1D grid = make_grid(o.n, o.half_width);
    WaveFunction psi;
    if (cfg.kind == "coherent")
        psi = coherent_state(CoherentLabel{cfg.x0, cfg.p0, cfg.sigma}, grid);
    else if (cfg.kind == "cat-position")
        psi = cat_state(CoherentLabel{cfg.x0 + 0.5 * o.separation, cfg.p0, cfg.sigma},
                        CoherentLabel{cfg.x0 - 0.5 * o.separation, cfg.p0, cfg.sigma},
                        cfg.phase, grid);
    else if (cfg.kind == "cat-momentum")
        psi = cat_state(CoherentLabel{cfg.x0, cfg.p0 + 0.5 * o.separation, cfg.sigma},
                        CoherentLabel{cfg.x0, cfg.p0 - 0.5 * o.separation, cfg.sigma},
                        cfg.phase, grid);
    else if (cfg.kind == "fock")
        psi = fock_state(o.fock_n, grid);
    else
        throw ConfigError("state: unknown kind '" + cfg.kind + "'");

    if (!o.out.empty()) io::write_wavefunction_csv(o.out, psi);
    if (!o.density_out.empty() || !o.wigner_out.empty()) {
        const DensityMatrix rho = density_from_pure(psi);
        if (!o.density_out.empty()) io::write_density_csv(o.density_out, rho);
        if (!o.wigner_out.empty())
            io::write_wigner_csv(o.wigner_out, wigner_from_density(rho));
    }
}

struct EvolveOpts {
    std::string mode = "position";
    double gamma = 0.0, t = 0.0, omega = 0.0, mass = 1.0, sigma = 1.0;
    int steps = 64;
    bool oracle = false;
    double dt = 0.0;
    std::string in, out;
};

void write_evolve_metrics(const std::string& base, const StateMetrics& before,
                          const StateMetrics& after, double seconds) {
    std::ofstream out(base + ".metrics.json");
    if (!out) throw std::runtime_error("cannot write metrics sidecar");
    char buf[512];
    std::snprintf(buf, sizeof buf,
                  "{\n  \"trace_before\": %.12g,\n  \"trace_after\": %.12g,\n"
                  "  \"trace_drift\": %.3e,\n  \"mean_x_drift\": %.3e,\n"
                  "  \"mean_p_drift\": %.3e,\n  \"runtime_seconds\": %.3f\n}\n",
                  before.trace, after.trace, after.trace - before.trace,
                  after.mean_x - before.mean_x, after.mean_p - before.mean_p,
                  seconds);
    out << buf;
}

void run_evolve(const EvolveOpts& o) {
    EvolutionSpec spec;
    spec.gamma = o.gamma;
    spec.omega = o.omega;
    spec.mass = o.mass;
    spec.sigma = o.sigma;
    spec.t = o.t;
    spec.n_steps = o.steps;
    if (o.mode == "position")
        spec.mode = DecoherenceMode::position;
    else if (o.mode == "phasespace")
        spec.mode = DecoherenceMode::phase_space;
    else
        throw ConfigError("evolve: mode must be position or phasespace");

    auto field = io::read_field_csv(o.in);
    const bool is_density = std::holds_alternative<ComplexField>(field);

    const auto t0 = std::chrono::steady_clock::now();
    StateMetrics before, after;
    if (is_density) {
        const ComplexField& cf = std::get<ComplexField>(field);
        DensityMatrix rho{cf.grid.gx, cf.values.matrix()};
        before = phase_space_stats(wigner_from_density(rho));
        DensityMatrix evolved{rho.grid, {}};
        if (o.oracle) {
            const double dt = o.dt > 0.0 ? o.dt : default_oracle_dt(spec, rho.grid);
            evolved = evolve_master_oracle(rho, spec, dt);
        } else if (spec.mode == DecoherenceMode::position && spec.omega == 0.0) {
            evolved = evolve_position_lindblad(rho, spec.gamma, spec.t);
        } else {
            evolved = density_from_wigner(
                evolve_composed(wigner_from_density(rho), spec));
        }
        after = phase_space_stats(wigner_from_density(evolved));
        io::write_density_csv(o.out, evolved);
    } else {
        WignerFunction w{std::get<RealField>(field).grid,
                         std::move(std::get<RealField>(field).values)};
        before = phase_space_stats(w);
        if (o.oracle) {
            const double dt = o.dt > 0.0 ? o.dt : default_oracle_dt(spec, w.grid.gx);
            const DensityMatrix evolved =
                evolve_master_oracle(density_from_wigner(w), spec, dt);
            w = wigner_from_density(evolved);
        } else {
            w = evolve_composed(w, spec);
        }
        after = phase_space_stats(w);
        io::write_wigner_csv(o.out, w);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_evolve_metrics(o.out, before, after, seconds);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"psdec: coherent-state POVM decoherence toolkit"};
    app.set_version_flag("--version", std::string("psdec ") + kVersion);
    app.require_subcommand(1);

    // state
    StateOpts so;
    CLI::App* state = app.add_subcommand("state", "build an initial pure state");
    state->add_option("--kind", so.kind,
                      "coherent|cat-position|cat-momentum|fock");
    state->add_option("--x0", so.x0);
    state->add_option("--p0", so.p0);
    state->add_option("--separation", so.separation, "cat center distance");
    state->add_option("--phase", so.phase, "relative phase (radians)");
    state->add_option("--sigma", so.sigma, "coherent width");
    state->add_option("--fock-n", so.fock_n);
    state->add_option("--n", so.n, "grid samples per axis");
    state->add_option("--half-width", so.half_width);
    state->add_option("--out", so.out, "wavefunction CSV");
    state->add_option("--density", so.density_out, "density matrix CSV");
    state->add_option("--wigner", so.wigner_out, "Wigner CSV");
    state->callback([&] { run_state(so); });

    // transform
    CLI::App* transform = app.add_subcommand("transform", "convert representations");
    transform->require_subcommand(1);
    static std::string tin, tout;
    static double tsigma = 1.0;
    for (const char* name : {"wigner", "husimi", "char", "density"}) {
        CLI::App* sub = transform->add_subcommand(name);
        sub->add_option("--in", tin)->required();
        sub->add_option("--out", tout)->required();
        if (std::string(name) == "husimi") sub->add_option("--sigma", tsigma);
        sub->callback([name] {
            const std::string kind = name;
            if (kind == "wigner") {
                io::write_wigner_csv(tout, wigner_from_density(io::read_density_csv(tin)));
            } else if (kind == "husimi") {
                const HusimiFunction q =
                    husimi_from_density(io::read_density_csv(tin), tsigma);
                io::write_field_csv(tout, as_field(q));
            } else if (kind == "char") {
                const CharacteristicFunction chi =
                    characteristic_from_wigner(io::read_wigner_csv(tin));
                io::write_field_csv(tout, ComplexField{chi.dual_grid, chi.chi});
            } else {
                auto in = io::read_field_csv(tin);
                if (std::holds_alternative<ComplexField>(in)) {
                    // wavefunction-style input not supported here; density from Wigner
                    throw ConfigError("transform density expects a real Wigner CSV");
                }
                RealField f = std::get<RealField>(std::move(in));
                WignerFunction w{f.grid, std::move(f.values)};
                io::write_density_csv(tout, density_from_wigner(w));
            }
        });
    }

    // evolve
    EvolveOpts eo;
    CLI::App* evolve = app.add_subcommand("evolve", "Lindblad time evolution");
    evolve->add_option("--mode", eo.mode, "position|phasespace")->required();
    evolve->add_option("--gamma", eo.gamma)->required();
    evolve->add_option("--t", eo.t)->required();
    evolve->add_option("--omega", eo.omega);
    evolve->add_option("--mass", eo.mass);
    evolve->add_option("--sigma", eo.sigma);
    evolve->add_option("--steps", eo.steps, "splitting steps");
    evolve->add_flag("--oracle", eo.oracle, "integrate the master equation (RK4)");
    evolve->add_option("--dt", eo.dt, "oracle step (default auto)");
    evolve->add_option("--in", eo.in)->required();
    evolve->add_option("--out", eo.out)->required();
    evolve->callback([&] { run_evolve(eo); });

    // povm
    CLI::App* povm = app.add_subcommand("povm", "coherent-state POVM channel");
    povm->require_subcommand(1);
    static std::string pin, pout;
    static double pm = 1.0, psigma = 1.0;
    static int pcount = 1000;
    static std::uint64_t pseed = 1;
    CLI::App* papply = povm->add_subcommand("apply", "unrecorded measurements");
    papply->add_option("--m", pm, "iteration count")->required();
    papply->add_option("--sigma", psigma);
    papply->add_option("--in", pin)->required();
    papply->add_option("--out", pout)->required();
    papply->callback([] {
        if (pm < 1.0 || pm != static_cast<int>(pm))
            throw ConfigError("povm apply: m must be a positive integer");
        io::write_density_csv(
            pout, povm_channel(io::read_density_csv(pin), static_cast<int>(pm), psigma));
    });
    CLI::App* psmooth = povm->add_subcommand("smooth", "Wigner-space channel");
    psmooth->add_option("--m", pm, "measurement count (positive real)")->required();
    psmooth->add_option("--sigma", psigma);
    psmooth->add_option("--in", pin)->required();
    psmooth->add_option("--out", pout)->required();
    psmooth->callback([] {
        io::write_wigner_csv(pout,
                             povm_smooth_wigner(io::read_wigner_csv(pin), pm, psigma));
    });
    CLI::App* psample = povm->add_subcommand("sample", "draw measurement outcomes");
    psample->add_option("--n", pcount, "sample count")->required();
    psample->add_option("--seed", pseed)->required();
    psample->add_option("--in", pin)->required();
    psample->add_option("--out", pout)->required();
    psample->callback([] {
        if (pcount < 1) throw ConfigError("povm sample: n must be >= 1");
        PovmSampler sampler(io::read_density_csv(pin), pseed);
        std::ofstream out(pout);
        if (!out) throw std::runtime_error("cannot open " + pout);
        out << "x0,p0\n";
        char buf[80];
        for (int k = 0; k < pcount; ++k) {
            const CoherentLabel z = sampler.next();
            std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", z.x0, z.p0);
            out << buf;
        }
    });

    // analyze / compare
    static std::string afile, cfile_a, cfile_b;
    CLI::App* analyze = app.add_subcommand("analyze", "print state metrics as JSON");
    analyze->add_option("field", afile, "real field CSV")->required();
    analyze->callback([] {
        RealField f = io::read_real_field_csv(afile);
        std::cout << io::metrics_json(phase_space_stats(WignerFunction{
                         f.grid, std::move(f.values)}))
                  << "\n";
    });
    CLI::App* compare = app.add_subcommand("compare", "field distance (l2, linf)");
    compare->add_option("a", cfile_a)->required();
    compare->add_option("b", cfile_b)->required();
    compare->callback([] {
        const FieldDistance d = compare_fields(io::read_real_field_csv(cfile_a),
                                               io::read_real_field_csv(cfile_b));
        char buf[128];
        std::snprintf(buf, sizeof buf, "{\"l2\": %.12g, \"linf\": %.12g}\n", d.l2,
                      d.linf);
        std::cout << buf;
    });

    // scenario
    CLI::App* scenario = app.add_subcommand("scenario", "figure reproduction runner");
    scenario->require_subcommand(1);
    static std::string scn;
    static std::string sc_outdir;
    CLI::App* run = scenario->add_subcommand("run", "run a built-in or config file");
    run->add_option("name", scn, "built-in name or JSON config path")->required();
    run->add_option("--out-dir", sc_outdir, "override output directory");
    run->callback([] {
        ScenarioConfig cfg;
        const auto names = builtin_scenario_names();
        if (std::find(names.begin(), names.end(), scn) != names.end())
            cfg = builtin_scenario(scn);
        else
            cfg = load_scenario_file(scn);
        if (!sc_outdir.empty()) cfg.outputs.directory = sc_outdir;
        const ScenarioResult result = run_scenario(cfg);
        std::cout << "wrote " << result.artifacts.size() << " snapshot(s); manifest: "
                  << result.manifest_path << "\n";
    });
    CLI::App* list = scenario->add_subcommand("list", "list built-in scenarios");
    list->callback([] {
        for (const auto& name : builtin_scenario_names()) std::cout << name << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
