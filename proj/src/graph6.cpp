#include "dress/graph6.hpp"

#include <cstddef>
#include <fstream>
#include <string>

namespace dress {

namespace {

constexpr std::string_view kHeader = ">>graph6<<";

std::string_view strip_record(std::string_view line) {
    while (!line.empty() && (line.back() == '\n' || line.back() == '\r'))
        line.remove_suffix(1);
    if (line.substr(0, kHeader.size()) == kHeader) line.remove_prefix(kHeader.size());
    return line;
}

int sextet(std::string_view line, std::size_t pos) {
    unsigned char c = static_cast<unsigned char>(line[pos]);
    if (c < 63 || c > 126)
        throw Graph6Error("byte outside graph6 range at position " + std::to_string(pos));
    return c - 63;
}

}  // namespace

Graph decode_graph6(std::string_view line) {
    line = strip_record(line);
    if (line.empty()) throw Graph6Error("empty graph6 record");

    std::size_t pos = 0;
    long n;
    if (line[0] == '~') {
        if (line.size() < 4) throw Graph6Error("truncated long size field");
        if (line[1] == '~') throw Graph6Error("graph too large (8-byte size field unsupported)");
        n = (long(sextet(line, 1)) << 12) | (long(sextet(line, 2)) << 6) | sextet(line, 3);
        if (n < 63) throw Graph6Error("non-canonical long size field");
        pos = 4;
    } else {
        n = sextet(line, 0);
        pos = 1;
    }

    std::size_t bits = std::size_t(n) * (n - 1) / 2;
    std::size_t need = (bits + 5) / 6;
    if (line.size() - pos != need)
        throw Graph6Error("adjacency section has " + std::to_string(line.size() - pos) +
                          " bytes, expected " + std::to_string(need));

    std::vector<std::pair<int, int>> edges;
    std::size_t t = 0;  // bit cursor over pairs (i, j), column-major
    int i = 0, j = 1;
    for (std::size_t b = 0; b < need; ++b) {
        int g = sextet(line, pos + b);
        for (int s = 5; s >= 0; --s, ++t) {
            int bit = (g >> s) & 1;
            if (t >= bits) {
                if (bit) throw Graph6Error("nonzero padding bits");
                continue;
            }
            if (bit) edges.emplace_back(i, j);
            if (++i == j) {
                i = 0;
                ++j;
            }
        }
    }
    return Graph(static_cast<int>(n), std::move(edges));
}

std::string encode_graph6(const Graph& g) {
    long n = g.num_vertices();
    if (n > 258047) throw Graph6Error("graph too large for graph6 (n > 258047)");

    std::string out;
    if (n <= 62) {
        out.push_back(char(n + 63));
    } else {
        out.push_back('~');
        out.push_back(char(((n >> 12) & 63) + 63));
        out.push_back(char(((n >> 6) & 63) + 63));
        out.push_back(char((n & 63) + 63));
    }

    std::size_t bits = std::size_t(n) * (n - 1) / 2;
    int acc = 0, filled = 0;
    std::size_t t = 0;
    int i = 0, j = 1;
    for (; t < bits; ++t) {
        acc = (acc << 1) | (g.has_edge(i, j) ? 1 : 0);
        if (++filled == 6) {
            out.push_back(char(acc + 63));
            acc = 0;
            filled = 0;
        }
        if (++i == j) {
            i = 0;
            ++j;
        }
    }
    if (filled > 0) out.push_back(char((acc << (6 - filled)) + 63));
    return out;
}

std::vector<Graph> load_family(const std::string& path, bool skip_bad,
                               std::size_t* bad_lines) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Graph6Error("cannot open " + path);

    std::vector<Graph> graphs;
    std::size_t bad = 0;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        std::string_view rec = strip_record(line);
        if (rec.empty()) continue;
        try {
            graphs.push_back(decode_graph6(rec));
        } catch (const Graph6Error& e) {
            if (!skip_bad)
                throw Graph6Error(path + ":" + std::to_string(lineno) + ": " + e.what());
            ++bad;
        }
    }
    if (bad_lines) *bad_lines = bad;
    return graphs;
}

void save_family(const std::string& path, const std::vector<Graph>& graphs) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Graph6Error("cannot open " + path + " for writing");
    for (const auto& g : graphs) out << encode_graph6(g) << '\n';
    if (!out) throw Graph6Error("write failure on " + path);
}

}  // namespace dress
