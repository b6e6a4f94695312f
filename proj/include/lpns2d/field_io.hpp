#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "lpns2d/spectral_field.hpp"

namespace lpns2d {

// Field snapshot format, one file per field:
//   lpns2d-field v1, n=<n>, L=<float>, comps=<1|2>
// followed by row-major real samples, one value per token. For comps=2 the
// first component block precedes the second. Row-major means the x2 index
// varies fastest: values appear as f(x1_0, x2_0), f(x1_0, x2_1), ...

template <typename Scalar>
void write_field(std::ostream& os, const PhysicalField<Scalar>& f) {
    char header[128];
    std::snprintf(header, sizeof(header), "lpns2d-field v1, n=%d, L=%.17g, comps=%d\n",
                  f.grid.n, static_cast<double>(f.grid.box_length), f.components);
    os << header;
    char buf[40];
    for (int c = 0; c < f.components; ++c) {
        for (int i = 0; i < f.grid.n; ++i) {
            for (int j = 0; j < f.grid.n; ++j) {
                std::snprintf(buf, sizeof(buf), "%.17g", static_cast<double>(f.comp(c)(i, j)));
                os << buf << (j + 1 == f.grid.n ? '\n' : ' ');
            }
        }
    }
}

template <typename Scalar>
void write_field(const std::string& path, const PhysicalField<Scalar>& f) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open field file for writing: " + path);
    write_field(os, f);
    if (!os) throw IoError("write failed: " + path);
}

template <typename Scalar>
PhysicalField<Scalar> read_field(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw IoError("field file: missing header");
    int n = 0, comps = 0;
    double length = 0;
    if (std::sscanf(header.c_str(), "lpns2d-field v1, n=%d, L=%lg, comps=%d", &n, &length,
                    &comps) != 3)
        throw IoError("field file: bad header: " + header);

    PhysicalField<Scalar> f(Grid<Scalar>(n, Scalar(length)), comps);
    for (int c = 0; c < comps; ++c)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (!(is >> f.comp(c)(i, j))) throw IoError("field file: truncated samples");
    return f;
}

template <typename Scalar>
PhysicalField<Scalar> read_field(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open field file: " + path);
    return read_field<Scalar>(is);
}

}  // namespace lpns2d
