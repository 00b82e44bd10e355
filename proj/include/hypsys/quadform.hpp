#pragma once

#include <optional>
#include <string>

#include "hypsys/matrix.hpp"

namespace hypsys {

/// Nondegenerate quadratic form over a totally real field, given by its Gram matrix.
struct QuadraticForm {
    FieldPtr field;  // nullptr means Q
    int dim = 0;
    KMat gram;

    /// Checks symmetry and nondegeneracy exactly; promotes entries into `field`.
    static QuadraticForm make(FieldPtr field, KMat gram);
    static QuadraticForm diagonal(FieldPtr field, std::vector<FieldElement> entries);
    /// Standard Lorentz form diag(1,...,1,-1) in `dim` variables over Q.
    static QuadraticForm lorentz(int dim);

    int num_embeddings() const;
    /// <u, v> with respect to the Gram matrix.
    FieldElement pair(const std::vector<FieldElement>& u, const std::vector<FieldElement>& v) const;
    FieldElement apply(const std::vector<FieldElement>& v) const { return pair(v, v); }
};

struct SignatureProfile {
    std::vector<std::pair<int, int>> per_embedding;  // (positives, negatives)
};

enum class IsotropyClass { Anisotropic, Isotropic, Unknown };

struct AdmissibilityReport {
    bool admissible = false;
    SignatureProfile signature_profile;
    IsotropyClass isotropy = IsotropyClass::Unknown;
    std::optional<std::string> failure_reason;
};

/// Symmetric Gaussian elimination: S^t * gram * S = diag(D) exactly over k.
std::pair<KMat, std::vector<FieldElement>> congruence_diagonalize(const QuadraticForm& Q);

/// (positives, negatives) of the diagonalized form at real embedding e.
std::pair<int, int> signature_at(const QuadraticForm& Q, int e);

AdmissibilityReport check_admissible(const QuadraticForm& Q);

/// k != Q: Anisotropic. k = Q, dim >= 5: Isotropic. Otherwise (or inadmissible): Unknown.
IsotropyClass isotropy_class(const QuadraticForm& Q);

}  // namespace hypsys
