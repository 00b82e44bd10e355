#pragma once

#include "hypsys/isometry.hpp"

namespace hypsys {

/// One standard generator: g maps A_minus onto the closed complement of A_plus.
struct GeneratorDatum {
    IsometryK g;
    HalfSpace A_minus;
    HalfSpace A_plus;
};

/// Ping-pong certificate: all 2m half-spaces pairwise strongly disjoint and all
/// pairings exact; implies <g_1..g_m> is free on the g_i.
struct SchottkyCertificate {
    std::vector<GeneratorDatum> data;
    CertifiedReal min_gap;                            // min pairwise plane distance
    std::vector<std::vector<PlaneRelation>> pairwise;  // over the 2m planes
};

/// Exact check that g carries A_minus onto the closed complement of A_plus:
/// g applied to the oriented normal of A_minus is a k-scalar multiple, positive
/// at the identity embedding, of the negated oriented normal of A_plus.
bool verify_pairing(const GeneratorDatum& datum);

/// Certifies all pairings and pairwise strong disjointness.
/// Throws PairingFailed(i) / NotDisjoint(i,j).
SchottkyCertificate certify_schottky(std::vector<GeneratorDatum> data);

/// Rank-1 datum for a loxodromic g: half-spaces bounded by the planes orthogonal
/// to the axis at parameters +-l(g)/2, oriented outward. Works over the extension
/// k(lambda) of the entry field when the attracting eigenvalue is irrational.
GeneratorDatum build_cyclic_example(const IsometryK& g);

/// Reduced word over generators: letter i in {1..m} is g_i, -i is its inverse.
struct WordLengthRecord {
    std::vector<int> word;  // canonical representative (cyclic rotation + inversion)
    int length_word = 0;
    ComplexLength complex_length;
    bool primitive = true;  // false when the word is a proper power
};

/// One record per equivalence class (cyclic rotation, inversion) of cyclically
/// reduced nonempty words of length <= L, sorted by translation length.
std::vector<WordLengthRecord> enumerate_complex_lengths(const SchottkyCertificate& cert, int L);

struct SpectrumResult {
    std::vector<WordLengthRecord> records;
    /// Set when the cutoff bound certifies that the minimum over words of
    /// length <= L is the systole of the whole group.
    std::optional<CertifiedReal> certified_systole;
    /// The empirical bound l(w) >= (|w|-1) * min_gap held on every record.
    bool bound_validated = false;
};

/// enumerate_complex_lengths plus the word-length cutoff certification.
SpectrumResult spectrum_with_cutoff(const SchottkyCertificate& cert, int L);

/// Canonical representative of a cyclically reduced word under cyclic rotation
/// and inversion, with letters ordered as integers.
std::vector<int> canonical_word(const std::vector<int>& w);

/// All canonical cyclically reduced words of length 1..L over `rank` generators.
std::vector<std::vector<int>> canonical_reduced_words(int rank, int L);

}  // namespace hypsys
