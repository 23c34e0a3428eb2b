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


#pragma once

#include <complex>
#include <istream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace heraldgen {

using Edge = std::pair<int, int>;

/// Simple undirected graph on vertices 0..n-1. Edges are stored as sorted
/// (u < v) pairs in ascending order, which doubles as the canonical encoding.
class LabeledGraph {
   public:
    LabeledGraph() = default;
    /// Throws on self-loops, duplicate edges and out-of-range vertices.
    LabeledGraph(int n, std::vector<Edge> edges);

    static LabeledGraph empty(int n) { return LabeledGraph(n, {}); }
    static LabeledGraph path(int n);
    static LabeledGraph cycle(int n);
    static LabeledGraph star(int n);
    static LabeledGraph complete(int n);

    int vertices() const { return n_; }
    const std::vector<Edge> &edges() const { return edges_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    bool has_edge(int u, int v) const;
    std::vector<int> neighbors(int v) const;
    bool connected() const;

    /// "u-v,u-v,..." in canonical order.
    std::string str() const;

    auto operator<=>(const LabeledGraph &) const = default;
    bool operator==(const LabeledGraph &) const = default;

   private:
    int n_ = 0;
    std::vector<Edge> edges_;
};

/// Reads "u v" lines; '#' starts a comment. The vertex count defaults to
/// one more than the largest vertex mentioned.
LabeledGraph parse_edge_list(std::istream &in, std::optional<int> vertices = std::nullopt);

/// Pauli string with an overall phase i^phase. Qubit 0 is the first letter.
struct PauliString {
    std::string ops;
    int phase = 0;

    static PauliString identity(int n) { return PauliString{std::string(n, 'I'), 0}; }

    int qubits() const { return static_cast<int>(ops.size()); }
    PauliString operator*(const PauliString &rhs) const;
    /// Applies the operator to a 2^n statevector (qubit 0 is the most
    /// significant bit of the basis index).
    std::vector<std::complex<double>> apply(const std::vector<std::complex<double>> &psi) const;
    std::string str() const;

    bool operator==(const PauliString &) const = default;
};

/// prod_{(u,v) in E} CZ_uv |+>^n as a 2^n statevector.
std::vector<std::complex<double>> graph_state(const LabeledGraph &g);

/// K_v = X_v prod_{u in N(v)} Z_u for every vertex.
std::vector<PauliString> stabilizer_generators(const LabeledGraph &g);

/// Toggles every edge inside the neighbourhood of v.
LabeledGraph local_complement(const LabeledGraph &g, int v);

struct LcOrbit {
    /// Orbit members in canonical order.
    std::vector<LabeledGraph> graphs;
    int min_edges = 0;
    /// Fewest edges; ties go to the smallest canonical encoding.
    LabeledGraph representative;
};

/// Breadth-first closure under local complementation at every vertex.
LcOrbit lc_orbit(const LabeledGraph &g);

}  // namespace heraldgen
