#pragma once

// Independent oracles: exhaustive perfection, rank by elimination, audit of
// the explicit rank basis, distension additivity and propelinear certificates.

#include "propel/affinegroups.hpp"
#include "propel/mollard.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace propel {

enum class Outcome { pass, fail, skipped, probabilistic };

std::string to_string(Outcome o);

/// q^exp as a JSON number, or the string "q^exp" when it does not fit in 64 bits.
nlohmann::ordered_json power_count(unsigned q, unsigned exp);

struct Report {
    std::string check;
    Outcome result = Outcome::pass;
    nlohmann::ordered_json details = nlohmann::ordered_json::object();

    bool failed() const noexcept { return result == Outcome::fail; }
};

/// Default occupancy budget for check_perfect: q^N cells.
inline constexpr std::uint64_t kMaxSpaceCells = std::uint64_t{1} << 26;

/// Marks every codeword and its N(q-1) neighbours in a q^N occupancy array.
/// Passes iff nothing is marked twice and every cell is marked.
Report check_perfect(const CodeHandle& code, std::uint64_t max_space_cells = kMaxSpaceCells);

/// Same check over an explicit word list (used for mutation tests).
Report check_perfect_words(const FieldContext& field, Index length, const std::vector<std::vector<Element>>& words,
                           std::uint64_t max_space_cells = kMaxSpaceCells);

/// Dimension of the span of the words. An empty list has rank 0.
std::size_t rank_by_elimination(const std::vector<FqVector>& words);
/// Dimension of the span of all codewords, by streaming elimination.
std::size_t rank_by_elimination(const CodeHandle& code, std::uint64_t max_codewords = kMaxCodewords);

/// Independence of B u B' u B'', membership of each vector, and (when the code
/// is enumerable within budget) equality with the full elimination rank.
Report audit_rank_basis(const CodeHandle& code, std::uint64_t max_codewords = kMaxCodewords);

/// l(tau1 | tau2) == l(tau1) + l(tau2), each via the stacked-rank formula.
Report check_additivity(const PermTable& tau1, const PermTable& tau2);

/// Full Hamming-space isometry: coordinate permutation then per-coordinate
/// symbol permutations.
struct Isometry {
    std::vector<std::uint32_t> sigma;
    std::vector<std::vector<Element>> pis;

    /// Throws std::invalid_argument unless sigma and every pi are bijections.
    void validate(unsigned q) const;
    std::size_t length() const noexcept { return sigma.size(); }

    static Isometry identity(unsigned q, std::size_t length);
    friend bool operator==(const Isometry&, const Isometry&) = default;
};

/// w[sigma(k)] = pis[sigma(k)](v[k])
FqVector apply_isometry(const Isometry& phi, const FqVector& v);
/// (outer o inner)(v) = outer(inner(v))
Isometry compose(const Isometry& outer, const Isometry& inner);

using CodewordKey = std::vector<Element>;
using PropelinearCertificate = std::map<CodewordKey, Isometry>;

/// phi_x = (identity, s -> s + x_k): valid whenever the code is linear.
PropelinearCertificate translation_certificate(const CodeHandle& code, std::uint64_t max_codewords = kMaxCodewords);

/// Number of pairs beyond which closure and code preservation are sampled.
inline constexpr std::uint64_t kFullCertificateCodeSize = std::uint64_t{1} << 12;

/// Checks (i) phi_x(S) = S, (ii) phi_x(0) = x and (iii) phi_x o phi_y = phi_{phi_x(y)}.
/// Exhaustive for codes up to kFullCertificateCodeSize words; otherwise
/// `samples` random pairs are checked and the result is probabilistic.
Report check_propelinear_certificate(const CodeHandle& code, const PropelinearCertificate& cert,
                                     std::uint64_t samples = 1U << 16, std::uint64_t seed = 1);

}  // namespace propel
