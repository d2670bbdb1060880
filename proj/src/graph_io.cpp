#include "locirr/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "locirr/errors.hpp"

namespace locirr {

namespace {

bool is_skippable(const std::string& line)
{
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

// Parses exactly two integers from the line; anything else is an error.
bool parse_pair(const std::string& line, long long& a, long long& b)
{
    std::istringstream ss(line);
    if (!(ss >> a >> b))
        return false;
    std::string rest;
    return !(ss >> rest);
}

} // namespace

Graph read_graph(std::istream& in)
{
    std::string line;
    int line_no = 0;
    long long n = -1, m = -1;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line))
            continue;
        if (!parse_pair(line, n, m) || n < 0 || m < 0)
            throw parse_error(line_no, "expected header \"n m\"");
        break;
    }
    if (n < 0)
        throw parse_error(line_no, "missing header");
    if (n > 100'000'000 || m > n * (n - 1) / 2)
        throw parse_error(line_no, "edge count " + std::to_string(m) + " impossible for n=" + std::to_string(n));

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    std::set<std::pair<int, int>> seen;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_skippable(line))
            continue;
        long long a = 0, b = 0;
        if (!parse_pair(line, a, b))
            throw parse_error(line_no, "expected edge \"u v\"");
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw parse_error(line_no, "vertex out of range 0.." + std::to_string(n - 1));
        if (a == b)
            throw parse_error(line_no, "self-loop " + std::to_string(a) + " " + std::to_string(b));
        if (static_cast<long long>(edges.size()) >= m)
            throw parse_error(line_no, "more edges than declared m=" + std::to_string(m));
        int u = static_cast<int>(std::min(a, b)), v = static_cast<int>(std::max(a, b));
        if (!seen.emplace(u, v).second)
            throw parse_error(line_no, "duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        edges.push_back({u, v});
    }
    if (static_cast<long long>(edges.size()) != m)
        throw parse_error(line_no, "declared m=" + std::to_string(m) + " but found " + std::to_string(edges.size()) +
                                       " edges");
    return Graph(static_cast<int>(n), std::move(edges));
}

Graph read_graph_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw input_error("cannot open graph file " + path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g)
{
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';
    for (const auto& e : g.edges())
        out << e.u << ' ' << e.v << '\n';
}

void write_graph_file(const std::string& path, const Graph& g)
{
    std::ofstream out(path);
    if (!out)
        throw input_error("cannot write graph file " + path);
    write_graph(out, g);
}

} // namespace locirr
