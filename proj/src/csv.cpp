#include "cascade/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cascade {

namespace {

void append_value(std::string& out, double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
}

} // namespace

std::string to_csv(const ObservableSeries& series) {
    std::string out =
        "tau,W,C,rho11,rho22,rho33,re_rho12,im_rho12,re_rho13,im_rho13,re_rho23,im_rho23,norm\n";
    for (const ObservableSample& s : series.samples) {
        const double cols[13] = {s.tau, s.W, s.C, s.rho11, s.rho22, s.rho33,
                                 s.rho12.real(), s.rho12.imag(), s.rho13.real(), s.rho13.imag(),
                                 s.rho23.real(), s.rho23.imag(), s.norm};
        for (int i = 0; i < 13; ++i) {
            if (i > 0) out += ',';
            append_value(out, cols[i]);
        }
        out += '\n';
    }
    return out;
}

void write_csv_file(const std::string& path, const ObservableSeries& series) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open '" + tmp + "' for writing");
        f << to_csv(series);
        if (!f.good()) {
            f.close();
            std::remove(tmp.c_str());
            throw std::runtime_error("write to '" + tmp + "' failed");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw std::runtime_error("cannot move output into place at '" + path + "'");
    }
}

} // namespace cascade
