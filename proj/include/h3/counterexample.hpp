#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "h3/core.hpp"
#include "h3/walks.hpp"

namespace h3 {

// Vertex labels 0/1/2 and the resulting cluster sizes.
struct Tripartition {
    std::vector<std::uint8_t> labels;
    std::array<std::size_t, 3> sizes{};

    static Tripartition from_labels(std::vector<std::uint8_t> labels);
    std::size_t n() const { return labels.size(); }
    std::uint8_t label(Vertex v) const { return labels.at(v); }
};

// Parity obstruction to any tour decomposition: no edge meets all three
// parts and |H[U1,U1,U2]| and |H[U1,U2,U2]| differ mod 3.
struct NoTourCertificate {
    Tripartition partition;
    std::size_t h112 = 0;
    std::size_t h122 = 0;
    std::size_t mixed = 0; // |H[U0,U1,U2]|, zero in a valid certificate

    unsigned h112_mod3() const { return static_cast<unsigned>(h112 % 3); }
    unsigned h122_mod3() const { return static_cast<unsigned>(h122 % 3); }
    bool valid() const { return mixed == 0 && h112_mod3() != h122_mod3(); }
};

// Either a certificate or the reason it does not apply.
struct CertifyOutcome {
    std::optional<NoTourCertificate> certificate;
    std::string inapplicable;
    std::optional<Triple> mixed_edge;

    bool applicable() const { return certificate.has_value(); }
};

struct LabelledGraph {
    ThreeGraph graph;
    Tripartition partition;
};

// H_n on n = 18k vertices: V0 = [0,6k), V1 = [6k,12k-2), V2 = [12k-2,18k).
LabelledGraph build_Hn(std::size_t k);

// Perfect matching of H_n whose edges meet V0 in exactly one vertex.
std::vector<Triple> build_matching_F(const ThreeGraph& hn, const Tripartition& part);

struct Counterexample {
    ThreeGraph graph;
    Tripartition partition;
    NoTourCertificate certificate;
    std::size_t cycle_length = 0; // l' of the tight cycle added inside V0
};

// (H_n - F) plus a tight l'-cycle on V0 vertices 0..l'-1.
Counterexample build_counterexample(std::size_t n, std::size_t ell);

struct RegularVariant {
    ThreeGraph graph;
    Tripartition partition;
    NoTourCertificate certificate;
    std::array<std::size_t, 3> degrees_before{}; // d0, d1, d2 of H_n - F
    std::size_t degree = 0;                     // common degree afterwards
};

// H_n - F plus three edge-disjoint tight Hamilton cycles in V1 and one in V2.
RegularVariant build_regular_variant(std::size_t k, std::uint64_t seed = 0);

struct PhiResult {
    std::uint64_t phi = 0; // sum over windows in F1 u F2
    std::size_t f1 = 0;    // windows 112, 121, 211
    std::size_t f2 = 0;    // windows 122, 212, 221
    unsigned phi_mod3() const { return static_cast<unsigned>(phi % 3); }
};

PhiResult phi_cyclic_word(const std::vector<std::uint8_t>& word);

// |W[U1,U1,U2]| == |W[U1,U2,U2]| (mod 3) for the tour w.
bool check_tour_parity(const WalkSeq& w, const Tripartition& part, const ThreeGraph& host);

CertifyOutcome certify_no_tour(const ThreeGraph& h, const Tripartition& part);

struct K43Certificate {
    std::size_t n = 0;               // order of G1
    std::size_t d = 0;               // degree of G1
    std::size_t copy_edges = 0;      // dn, edges in both copies of G1
    std::size_t needed_edges = 0;    // n(n-1)/2
    bool holds() const { return copy_edges < needed_edges; }
};

struct K43Example {
    ThreeGraph graph;   // Z = [0,2n) (copies [0,n) and [n,2n)), x1 = 2n, x2 = 2n+1
    Graph2 g1;          // circulant d-regular graph on n vertices
    Vertex x1 = 0;
    Vertex x2 = 0;
    K43Certificate certificate;
};

K43Example build_K43_example(std::size_t k);

} // namespace h3
