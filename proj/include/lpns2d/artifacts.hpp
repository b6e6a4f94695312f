#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "lpns2d/errors.hpp"

namespace lpns2d {

// FNV-1a 64-bit content hash; stable across platforms and runs, used by the
// run manifest so byte-identical reruns produce byte-identical manifests.
inline uint64_t fnv1a64(const std::string& bytes) {
    uint64_t h = 1469598103934665603ull;
    for (const unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Collects artifact files for one run directory and writes the manifest.
class ArtifactSink {
public:
    explicit ArtifactSink(std::string dir) : dir_(std::move(dir)) {
        std::error_code ec;
        std::filesystem::create_directories(dir_, ec);
        if (ec) throw IoError("cannot create output directory: " + dir_);
    }

    const std::string& dir() const { return dir_; }

    void write(const std::string& name, const std::string& content) {
        const std::string path = dir_ + "/" + name;
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot open artifact for writing: " + path);
        os << content;
        if (!os) throw IoError("write failed: " + path);
        entries_.push_back({name, content.size(), fnv1a64(content)});
    }

    // CSV convenience: header row plus rows of preformatted cells.
    void write_csv(const std::string& name, const std::string& header,
                   const std::vector<std::string>& rows) {
        std::string content = header + "\n";
        for (const auto& r : rows) content += r + "\n";
        write(name, content);
    }

    // companion gnuplot script plotting columns of a CSV against the first
    void write_gnuplot(const std::string& name, const std::string& csv,
                       const std::vector<std::pair<int, std::string>>& columns,
                       const std::string& xlabel = "t") {
        std::string s;
        s += "set datafile separator \",\"\n";
        s += "set key autotitle columnhead\n";
        s += "set xlabel \"" + xlabel + "\"\n";
        s += "plot ";
        bool first = true;
        for (const auto& [col, title] : columns) {
            if (!first) s += ", ";
            s += "\"" + csv + "\" using 1:" + std::to_string(col) + " with lines title \"" +
                 title + "\"";
            first = false;
        }
        s += "\n";
        write(name, s);
    }

    void finalize_manifest() {
        std::string m;
        for (const auto& e : entries_) {
            char line[512];
            std::snprintf(line, sizeof(line), "%016llx  %12zu  %s\n",
                          static_cast<unsigned long long>(e.hash), e.bytes, e.name.c_str());
            m += line;
        }
        const std::string path = dir_ + "/manifest.txt";
        std::ofstream os(path, std::ios::binary);
        if (!os) throw IoError("cannot write manifest: " + path);
        os << m;
    }

    struct Entry {
        std::string name;
        size_t bytes;
        uint64_t hash;
    };
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::string dir_;
    std::vector<Entry> entries_;
};

}  // namespace lpns2d
