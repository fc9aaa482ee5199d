#include "psdec/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace psdec::io {

namespace {

struct FieldHeader {
    int nx = 0, np = 0;
    double x_min = 0, x_max = 0, p_min = 0, p_max = 0;

    PhaseSpaceGrid grid() const {
        return PhaseSpaceGrid{Grid1D{nx, x_min, x_max}, Grid1D{np, p_min, p_max}};
    }
};

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return in;
}

void write_header(std::ofstream& out, const char* names, const PhaseSpaceGrid& g) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "# %d,%d,%.17g,%.17g,%.17g,%.17g", g.gx.n,
                  g.gp.n, g.gx.x_min, g.gx.x_max, g.gp.x_min, g.gp.x_max);
    out << "# " << names << "\n" << buf << "\n";
}

FieldHeader read_field_header(std::ifstream& in, const std::string& path) {
    std::string names, values;
    if (!std::getline(in, names) || !std::getline(in, values) ||
        names.rfind("# ", 0) != 0 || values.rfind("# ", 0) != 0)
        throw std::runtime_error("malformed field header in " + path);
    FieldHeader h;
    if (std::sscanf(values.c_str(), "# %d,%d,%lf,%lf,%lf,%lf", &h.nx, &h.np,
                    &h.x_min, &h.x_max, &h.p_min, &h.p_max) != 6)
        throw std::runtime_error("malformed field header values in " + path);
    if (h.nx <= 0 || h.np <= 0 || !(h.x_max > h.x_min) || !(h.p_max > h.p_min))
        throw std::runtime_error("invalid field header in " + path);
    return h;
}

int count_columns(const std::string& line) {
    int commas = 0;
    for (char c : line)
        if (c == ',') ++commas;
    return commas + 1;
}

}  // namespace

void write_field_csv(const std::string& path, const RealField& f) {
    auto out = open_out(path);
    write_header(out, "nx,np,x_min,x_max,p_min,p_max", f.grid);
    char buf[128];
    for (int i = 0; i < f.grid.gx.n; ++i) {
        const double x = f.grid.gx.point(i);
        for (int j = 0; j < f.grid.gp.n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", x,
                          f.grid.gp.point(j), f.values(i, j));
            out << buf;
        }
    }
}

void write_field_csv(const std::string& path, const ComplexField& f) {
    auto out = open_out(path);
    write_header(out, "nx,np,x_min,x_max,p_min,p_max", f.grid);
    char buf[160];
    for (int i = 0; i < f.grid.gx.n; ++i) {
        const double x = f.grid.gx.point(i);
        for (int j = 0; j < f.grid.gp.n; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", x,
                          f.grid.gp.point(j), f.values(i, j).real(),
                          f.values(i, j).imag());
            out << buf;
        }
    }
}

RealField read_real_field_csv(const std::string& path) {
    auto var = read_field_csv(path);
    if (!std::holds_alternative<RealField>(var))
        throw std::runtime_error(path + " holds a complex field, expected real");
    return std::get<RealField>(std::move(var));
}

ComplexField read_complex_field_csv(const std::string& path) {
    auto var = read_field_csv(path);
    if (!std::holds_alternative<ComplexField>(var))
        throw std::runtime_error(path + " holds a real field, expected complex");
    return std::get<ComplexField>(std::move(var));
}

std::variant<RealField, ComplexField> read_field_csv(const std::string& path) {
    auto in = open_in(path);
    const FieldHeader h = read_field_header(in, path);

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ": missing data");
    const int cols = count_columns(line);
    if (cols != 3 && cols != 4)
        throw std::runtime_error(path + ": expected 3 or 4 columns");

    const bool complex = cols == 4;
    RealField rf;
    ComplexField cf;
    if (complex) {
        cf.grid = h.grid();
        cf.values.resize(h.nx, h.np);
    } else {
        rf.grid = h.grid();
        rf.values.resize(h.nx, h.np);
    }

    for (long k = 0;; ++k) {
        if (k >= static_cast<long>(h.nx) * h.np)
            throw std::runtime_error(path + ": too many data rows");
        const int i = static_cast<int>(k / h.np);
        const int j = static_cast<int>(k % h.np);
        double x, p, re, im = 0.0;
        const int got = complex
                            ? std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf", &x, &p, &re, &im)
                            : std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &p, &re);
        if (got != cols) throw std::runtime_error(path + ": malformed data row");
        if (complex)
            cf.values(i, j) = Complex(re, im);
        else
            rf.values(i, j) = re;
        if (!std::getline(in, line)) {
            if (k + 1 != static_cast<long>(h.nx) * h.np)
                throw std::runtime_error(path + ": truncated data");
            break;
        }
    }
    if (complex) return cf;
    return rf;
}

void write_wavefunction_csv(const std::string& path, const WaveFunction& psi) {
    auto out = open_out(path);
    char buf[160];
    std::snprintf(buf, sizeof buf, "# n,x_min,x_max\n# %d,%.17g,%.17g\n",
                  psi.grid.n, psi.grid.x_min, psi.grid.x_max);
    out << buf;
    for (int i = 0; i < psi.grid.n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", psi.grid.point(i),
                      psi.amp(i).real(), psi.amp(i).imag());
        out << buf;
    }
}

WaveFunction read_wavefunction_csv(const std::string& path) {
    auto in = open_in(path);
    std::string names, values;
    if (!std::getline(in, names) || !std::getline(in, values))
        throw std::runtime_error("malformed wavefunction header in " + path);
    WaveFunction psi;
    if (std::sscanf(values.c_str(), "# %d,%lf,%lf", &psi.grid.n, &psi.grid.x_min,
                    &psi.grid.x_max) != 3 ||
        psi.grid.n <= 0)
        throw std::runtime_error("malformed wavefunction header in " + path);
    psi.amp.resize(psi.grid.n);
    std::string line;
    for (int i = 0; i < psi.grid.n; ++i) {
        double x, re, im;
        if (!std::getline(in, line) ||
            std::sscanf(line.c_str(), "%lf,%lf,%lf", &x, &re, &im) != 3)
            throw std::runtime_error(path + ": malformed wavefunction row");
        psi.amp(i) = Complex(re, im);
    }
    return psi;
}

void write_density_csv(const std::string& path, const DensityMatrix& rho) {
    ComplexField f{PhaseSpaceGrid{rho.grid, rho.grid}, rho.rho.array()};
    write_field_csv(path, f);
}

DensityMatrix read_density_csv(const std::string& path) {
    ComplexField f = read_complex_field_csv(path);
    if (f.grid.gx.n != f.grid.gp.n || !same_grid(f.grid.gx, f.grid.gp))
        throw std::runtime_error(path + ": density matrix axes differ");
    DensityMatrix rho{f.grid.gx, f.values.matrix()};
    return rho;
}

void write_wigner_csv(const std::string& path, const WignerFunction& w) {
    write_field_csv(path, as_field(w));
}

WignerFunction read_wigner_csv(const std::string& path) {
    RealField f = read_real_field_csv(path);
    return WignerFunction{f.grid, std::move(f.values)};
}

std::string metrics_json(const StateMetrics& m) {
    nlohmann::json j{{"mean_x", m.mean_x},
                     {"mean_p", m.mean_p},
                     {"var_x", m.var_x},
                     {"var_p", m.var_p},
                     {"negativity_volume", m.negativity_volume},
                     {"purity", m.purity},
                     {"min_wigner", m.min_wigner},
                     {"trace", m.trace},
                     {"l2_norm", m.l2_norm}};
    return j.dump(2);
}

void write_metrics_json(const std::string& path, const StateMetrics& m) {
    open_out(path) << metrics_json(m) << "\n";
}

}  // namespace psdec::io
