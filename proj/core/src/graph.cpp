// Copyright 2026 The heraldgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "heraldgen/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

namespace heraldgen {

LabeledGraph::LabeledGraph(int n, std::vector<Edge> edges) : n_(n) {
    if (n < 0) {
        throw std::invalid_argument("Graph vertex count must be non-negative.");
    }
    for (auto &e : edges) {
        if (e.first == e.second) {
            throw std::invalid_argument("Graph has a self-loop at vertex " + std::to_string(e.first) + ".");
        }
        if (e.first < 0 || e.second < 0 || e.first >= n || e.second >= n) {
            throw std::invalid_argument("Graph edge references a vertex outside 0..n-1.");
        }
        if (e.first > e.second) {
            std::swap(e.first, e.second);
        }
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw std::invalid_argument("Graph has a duplicate edge.");
    }
    edges_ = std::move(edges);
}

LabeledGraph LabeledGraph::path(int n) {
    std::vector<Edge> e;
    for (int v = 0; v + 1 < n; v++) {
        e.emplace_back(v, v + 1);
    }
    return LabeledGraph(n, e);
}

LabeledGraph LabeledGraph::cycle(int n) {
    std::vector<Edge> e;
    for (int v = 0; v < n; v++) {
        e.emplace_back(v, (v + 1) % n);
    }
    return LabeledGraph(n, e);
}

LabeledGraph LabeledGraph::star(int n) {
    std::vector<Edge> e;
    for (int v = 1; v < n; v++) {
        e.emplace_back(0, v);
    }
    return LabeledGraph(n, e);
}

LabeledGraph LabeledGraph::complete(int n) {
    std::vector<Edge> e;
    for (int u = 0; u < n; u++) {
        for (int v = u + 1; v < n; v++) {
            e.emplace_back(u, v);
        }
    }
    return LabeledGraph(n, e);
}

bool LabeledGraph::has_edge(int u, int v) const {
    Edge e = u < v ? Edge{u, v} : Edge{v, u};
    return std::binary_search(edges_.begin(), edges_.end(), e);
}

std::vector<int> LabeledGraph::neighbors(int v) const {
    if (v < 0 || v >= n_) {
        throw std::invalid_argument("Vertex " + std::to_string(v) + " is not in the graph.");
    }
    std::vector<int> out;
    for (const auto &[a, b] : edges_) {
        if (a == v) {
            out.push_back(b);
        } else if (b == v) {
            out.push_back(a);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool LabeledGraph::connected() const {
    if (n_ <= 1) {
        return true;
    }
    std::vector<bool> seen(n_, false);
    std::deque<int> queue{0};
    seen[0] = true;
    int count = 1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : neighbors(v)) {
            if (!seen[u]) {
                seen[u] = true;
                count++;
                queue.push_back(u);
            }
        }
    }
    return count == n_;
}

std::string LabeledGraph::str() const {
    std::ostringstream ss;
    for (std::size_t k = 0; k < edges_.size(); k++) {
        ss << (k ? "," : "") << edges_[k].first << "-" << edges_[k].second;
    }
    return ss.str();
}

LabeledGraph parse_edge_list(std::istream &in, std::optional<int> vertices) {
    std::vector<Edge> edges;
    int max_vertex = -1;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        if (auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream ls(line);
        int u, v;
        if (!(ls >> u)) {
            continue;
        }
        std::string rest;
        if (!(ls >> v) || (ls >> rest)) {
            throw std::invalid_argument("Edge list line " + std::to_string(lineno) + " is not of the form 'u v'.");
        }
        edges.emplace_back(u, v);
        max_vertex = std::max({max_vertex, u, v});
    }
    return LabeledGraph(vertices.value_or(max_vertex + 1), std::move(edges));
}

namespace {

// Single-qubit Pauli product a*b = i^phase * c, letters in {I,X,Y,Z}.
std::pair<char, int> pauli_mul(char a, char b) {
    if (a == 'I') {
        return {b, 0};
    }
    if (b == 'I') {
        return {a, 0};
    }
    if (a == b) {
        return {'I', 0};
    }
    // XY = iZ, YZ = iX, ZX = iY; reversed order gives -i.
    static const std::string cyc = "XYZ";
    int ia = static_cast<int>(cyc.find(a));
    int ib = static_cast<int>(cyc.find(b));
    char c = cyc[3 - ia - ib];
    return {c, (ib - ia + 3) % 3 == 1 ? 1 : 3};
}

}  // namespace

PauliString PauliString::operator*(const PauliString &rhs) const {
    if (ops.size() != rhs.ops.size()) {
        throw std::invalid_argument("Pauli strings act on different qubit counts.");
    }
    PauliString out{std::string(ops.size(), 'I'), (phase + rhs.phase) % 4};
    for (std::size_t q = 0; q < ops.size(); q++) {
        auto [c, p] = pauli_mul(ops[q], rhs.ops[q]);
        out.ops[q] = c;
        out.phase = (out.phase + p) % 4;
    }
    return out;
}

std::vector<std::complex<double>> PauliString::apply(const std::vector<std::complex<double>> &psi) const {
    const int n = qubits();
    if (psi.size() != (std::size_t{1} << n)) {
        throw std::invalid_argument("Statevector length does not match the Pauli string.");
    }
    static const std::complex<double> kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    std::size_t flip = 0;
    for (int q = 0; q < n; q++) {
        if (ops[q] == 'X' || ops[q] == 'Y') {
            flip |= std::size_t{1} << (n - 1 - q);
        }
    }
    std::vector<std::complex<double>> out(psi.size());
    for (std::size_t x = 0; x < psi.size(); x++) {
        // P|x> = i^phase prod_q (letter acting on bit x_q).
        int k = phase;
        for (int q = 0; q < n; q++) {
            int bit = static_cast<int>((x >> (n - 1 - q)) & 1);
            if (ops[q] == 'Z' && bit) {
                k += 2;
            } else if (ops[q] == 'Y') {
                k += bit ? 3 : 1;
            }
        }
        out[x ^ flip] += kPhases[k % 4] * psi[x];
    }
    return out;
}

std::string PauliString::str() const {
    static const char *kNames[4] = {"+", "+i", "-", "-i"};
    return kNames[phase % 4] + ops;
}

std::vector<std::complex<double>> graph_state(const LabeledGraph &g) {
    const int n = g.vertices();
    if (n > 20) {
        throw std::invalid_argument("graph_state supports at most 20 vertices.");
    }
    const std::size_t dim = std::size_t{1} << n;
    const double amp = std::pow(2.0, -0.5 * n);
    std::vector<std::complex<double>> out(dim);
    for (std::size_t x = 0; x < dim; x++) {
        int parity = 0;
        for (const auto &[u, v] : g.edges()) {
            parity ^= static_cast<int>((x >> (n - 1 - u)) & (x >> (n - 1 - v)) & 1);
        }
        out[x] = parity ? -amp : amp;
    }
    return out;
}

std::vector<PauliString> stabilizer_generators(const LabeledGraph &g) {
    std::vector<PauliString> out;
    for (int v = 0; v < g.vertices(); v++) {
        PauliString k = PauliString::identity(g.vertices());
        k.ops[v] = 'X';
        for (int u : g.neighbors(v)) {
            k.ops[u] = 'Z';
        }
        out.push_back(std::move(k));
    }
    return out;
}

LabeledGraph local_complement(const LabeledGraph &g, int v) {
    auto nb = g.neighbors(v);
    std::set<Edge> edges(g.edges().begin(), g.edges().end());
    for (std::size_t a = 0; a < nb.size(); a++) {
        for (std::size_t b = a + 1; b < nb.size(); b++) {
            Edge e{nb[a], nb[b]};
            if (!edges.erase(e)) {
                edges.insert(e);
            }
        }
    }
    return LabeledGraph(g.vertices(), std::vector<Edge>(edges.begin(), edges.end()));
}

LcOrbit lc_orbit(const LabeledGraph &g) {
    if (g.vertices() > 12) {
        throw std::invalid_argument("lc_orbit supports at most 12 vertices.");
    }
    std::set<LabeledGraph> seen{g};
    std::deque<LabeledGraph> queue{g};
    while (!queue.empty()) {
        LabeledGraph cur = std::move(queue.front());
        queue.pop_front();
        for (int v = 0; v < cur.vertices(); v++) {
            LabeledGraph next = local_complement(cur, v);
            if (seen.insert(next).second) {
                queue.push_back(std::move(next));
            }
        }
    }
    LcOrbit out;
    out.graphs.assign(seen.begin(), seen.end());
    out.representative = out.graphs.front();
    for (const auto &h : out.graphs) {
        if (h.edge_count() < out.representative.edge_count()) {
            out.representative = h;
        }
    }
    out.min_edges = out.representative.edge_count();
    return out;
}

}  // namespace heraldgen
