#include "propel/verifier.hpp"

#include <limits>
#include <random>
#include <stdexcept>

namespace propel {

std::string to_string(Outcome o) {
    switch (o) {
        case Outcome::pass: return "pass";
        case Outcome::fail: return "fail";
        case Outcome::skipped: return "skipped";
        case Outcome::probabilistic: return "probabilistic";
    }
    return "unknown";
}

nlohmann::ordered_json power_count(unsigned q, unsigned exp) {
    const std::uint64_t v = checked_pow(q, exp);
    if (v == std::numeric_limits<std::uint64_t>::max()) return std::to_string(q) + "^" + std::to_string(exp);
    return v;
}

// ---------------------------------------------------------------------------
// Perfection

namespace {

class Occupancy {
public:
    Occupancy(unsigned q, std::size_t length) : q_(q), powers_(length) {
        std::uint64_t p = 1;
        for (std::size_t k = 0; k < length; ++k) {
            powers_[k] = p;
            p *= q;
        }
        cells_.assign(p, 0);
    }

    std::uint64_t cell_count() const noexcept { return cells_.size(); }

    // Marks the radius-1 ball around w; returns the number of cells that were already marked.
    std::uint64_t mark_ball(std::span<const Element> w) {
        std::uint64_t centre = 0;
        for (std::size_t k = 0; k < w.size(); ++k) centre += powers_[k] * w[k];
        std::uint64_t overlaps = mark(centre);
        for (std::size_t k = 0; k < w.size(); ++k) {
            const std::uint64_t base = centre - powers_[k] * w[k];
            for (unsigned s = 0; s < q_; ++s) {
                if (s != w[k]) overlaps += mark(base + powers_[k] * s);
            }
        }
        return overlaps;
    }

    std::uint64_t unmarked() const {
        std::uint64_t count = 0;
        for (std::uint8_t c : cells_) count += c == 0;
        return count;
    }

private:
    std::uint64_t mark(std::uint64_t cell) {
        if (cells_[cell]) return 1;
        cells_[cell] = 1;
        return 0;
    }

    unsigned q_;
    std::vector<std::uint64_t> powers_;
    std::vector<std::uint8_t> cells_;
};

Report budget_skip(std::string check, unsigned q, Index length, std::uint64_t budget) {
    Report rep{std::move(check), Outcome::skipped, {}};
    rep.details["reason"] = "budget";
    rep.details["space_cells"] = power_count(q, static_cast<unsigned>(length));
    rep.details["max_space_cells"] = budget;
    return rep;
}

Report finish_perfect(Occupancy& occ, std::uint64_t codewords, std::uint64_t overlaps, unsigned q, Index length) {
    Report rep{"perfect", Outcome::pass, {}};
    const std::uint64_t ball = 1 + static_cast<std::uint64_t>(length) * (q - 1);
    const std::uint64_t uncovered = occ.unmarked();
    rep.details["length"] = length;
    rep.details["codewords"] = codewords;
    rep.details["ball_size"] = ball;
    rep.details["space_cells"] = occ.cell_count();
    rep.details["overlaps"] = overlaps;
    rep.details["uncovered"] = uncovered;
    rep.details["sphere_packing_equality"] = codewords * ball == occ.cell_count();
    if (overlaps != 0 || uncovered != 0 || codewords * ball != occ.cell_count()) rep.result = Outcome::fail;
    return rep;
}

}  // namespace

Report check_perfect(const CodeHandle& code, std::uint64_t max_space_cells) {
    const std::uint64_t cells = checked_pow(code.q(), static_cast<unsigned>(code.length()));
    if (cells > max_space_cells) return budget_skip("perfect", code.q(), code.length(), max_space_cells);

    Occupancy occ(code.q(), static_cast<std::size_t>(code.length()));
    std::uint64_t codewords = 0;
    std::uint64_t overlaps = 0;
    enumerate(code, [&](std::span<const Element> w) {
        ++codewords;
        overlaps += occ.mark_ball(w);
    }, std::numeric_limits<std::uint64_t>::max());
    return finish_perfect(occ, codewords, overlaps, code.q(), code.length());
}

Report check_perfect_words(const FieldContext& field, Index length, const std::vector<std::vector<Element>>& words,
                           std::uint64_t max_space_cells) {
    const std::uint64_t cells = checked_pow(field.q(), static_cast<unsigned>(length));
    if (cells > max_space_cells) return budget_skip("perfect", field.q(), length, max_space_cells);
    Occupancy occ(field.q(), static_cast<std::size_t>(length));
    std::uint64_t overlaps = 0;
    for (const auto& w : words) {
        if (static_cast<Index>(w.size()) != length) throw std::invalid_argument("check_perfect_words: length mismatch");
        overlaps += occ.mark_ball(w);
    }
    return finish_perfect(occ, words.size(), overlaps, field.q(), length);
}

// ---------------------------------------------------------------------------
// Ranks

std::size_t rank_by_elimination(const std::vector<FqVector>& words) {
    if (words.empty()) return 0;
    EchelonBasis span(words.front().field, words.front().size());
    for (const FqVector& w : words) span.insert(w);
    return span.rank();
}

std::size_t rank_by_elimination(const CodeHandle& code, std::uint64_t max_codewords) {
    EchelonBasis span(code.field(), code.length());
    const std::size_t full = static_cast<std::size_t>(code.length());
    enumerate(code, [&](std::span<const Element> w) {
        if (span.rank() < full) span.insert(w);
    }, max_codewords);
    return span.rank();
}

Report audit_rank_basis(const CodeHandle& code, std::uint64_t max_codewords) {
    Report rep{"basis-audit", Outcome::pass, {}};
    const RankBasis basis = rank_basis(code);
    const std::vector<FqVector> vectors = basis.all();

    EchelonBasis span(code.field(), code.length());
    std::size_t non_members = 0;
    for (const FqVector& v : vectors) {
        span.insert(v);
        if (!contains(code, v)) ++non_members;
    }
    const std::size_t expected = rank_closed_form(code);

    rep.details["B"] = basis.b.size();
    rep.details["B_prime"] = basis.b_prime.size();
    rep.details["B_second"] = basis.b_second.size();
    rep.details["basis_size"] = vectors.size();
    rep.details["independent_rank"] = span.rank();
    rep.details["closed_form_rank"] = expected;
    rep.details["non_members"] = non_members;

    const bool independent = span.rank() == vectors.size();
    rep.details["independent"] = independent;
    if (!independent || non_members != 0 || vectors.size() != expected) rep.result = Outcome::fail;

    if (code.size() <= max_codewords) {
        const std::size_t full = rank_by_elimination(code, max_codewords);
        rep.details["full_rank"] = full;
        if (full != span.rank()) rep.result = Outcome::fail;
    } else {
        rep.details["full_rank"] = "skipped";
        rep.details["codewords"] = power_count(code.q(), static_cast<unsigned>(code.length()) - code.r() - 1);
    }
    return rep;
}

Report check_additivity(const PermTable& tau1, const PermTable& tau2) {
    require_same_field(tau1.field(), tau2.field(), "check_additivity");
    const HammingPair hp1 = build_hamming_pair(tau1.q(), tau1.r());
    const HammingPair hp2 = build_hamming_pair(tau2.q(), tau2.r());
    const HammingPair hp12 = build_hamming_pair(tau1.q(), tau1.r() + tau2.r());
    const std::size_t l1 = distension(hp1, tau1);
    const std::size_t l2 = distension(hp2, tau2);
    const std::size_t l12 = distension(hp12, iterate_perms(tau1, tau2));

    Report rep{"additivity", l12 == l1 + l2 ? Outcome::pass : Outcome::fail, {}};
    rep.details["r1"] = tau1.r();
    rep.details["r2"] = tau2.r();
    rep.details["l1"] = l1;
    rep.details["l2"] = l2;
    rep.details["l12"] = l12;
    return rep;
}

// ---------------------------------------------------------------------------
// Isometries and certificates

void Isometry::validate(unsigned q) const {
    const std::size_t n = sigma.size();
    if (pis.size() != n) throw std::invalid_argument("isometry: need one symbol permutation per coordinate");
    std::vector<bool> seen(n, false);
    for (std::uint32_t s : sigma) {
        if (s >= n || seen[s]) throw std::invalid_argument("isometry: coordinate map is not a permutation");
        seen[s] = true;
    }
    for (const auto& pi : pis) {
        if (pi.size() != q) throw std::invalid_argument("isometry: symbol permutation has wrong size");
        std::vector<bool> hit(q, false);
        for (Element e : pi) {
            if (e >= q || hit[e]) throw std::invalid_argument("isometry: symbol map is not a permutation");
            hit[e] = true;
        }
    }
}

Isometry Isometry::identity(unsigned q, std::size_t length) {
    Isometry phi;
    phi.sigma.resize(length);
    std::vector<Element> id(q);
    for (unsigned s = 0; s < q; ++s) id[s] = static_cast<Element>(s);
    for (std::size_t k = 0; k < length; ++k) phi.sigma[k] = static_cast<std::uint32_t>(k);
    phi.pis.assign(length, id);
    return phi;
}

namespace {

void apply_raw(const Isometry& phi, std::span<const Element> v, std::vector<Element>& out) {
    out.resize(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) {
        const std::uint32_t t = phi.sigma[k];
        out[t] = phi.pis[t][v[k]];
    }
}

// phi_x o phi_y == phi_z, compared on the (sigma, pis) representation.
bool composes_to(const Isometry& x, const Isometry& y, const Isometry& z, unsigned q) {
    for (std::size_t k = 0; k < y.sigma.size(); ++k) {
        const std::uint32_t mid = y.sigma[k];
        const std::uint32_t t = x.sigma[mid];
        if (z.sigma[k] != t) return false;
        for (unsigned s = 0; s < q; ++s) {
            if (z.pis[t][s] != x.pis[t][y.pis[mid][s]]) return false;
        }
    }
    return true;
}

// Pointwise comparison on the code, for maps that agree on S but not on all of F_q^N.
bool agree_on_code(const Isometry& x, const Isometry& y, const Isometry& z, const std::vector<CodewordKey>& words) {
    std::vector<Element> inner;
    std::vector<Element> lhs;
    std::vector<Element> rhs;
    for (const CodewordKey& w : words) {
        apply_raw(y, w, inner);
        apply_raw(x, inner, lhs);
        apply_raw(z, w, rhs);
        if (lhs != rhs) return false;
    }
    return true;
}

}  // namespace

FqVector apply_isometry(const Isometry& phi, const FqVector& v) {
    if (phi.length() != static_cast<std::size_t>(v.size())) throw std::invalid_argument("apply_isometry: length mismatch");
    std::vector<Element> out;
    apply_raw(phi, v.span(), out);
    return FqVector(v.field, ElementVector(Eigen::Map<const ElementVector>(out.data(), v.size())));
}

Isometry compose(const Isometry& outer, const Isometry& inner) {
    if (outer.length() != inner.length()) throw std::invalid_argument("compose: isometry length mismatch");
    Isometry out;
    const std::size_t n = inner.length();
    out.sigma.resize(n);
    out.pis.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::uint32_t mid = inner.sigma[k];
        const std::uint32_t t = outer.sigma[mid];
        out.sigma[k] = t;
        const auto& pin = inner.pis[mid];
        std::vector<Element> pi(pin.size());
        for (std::size_t s = 0; s < pin.size(); ++s) pi[s] = outer.pis[t][pin[s]];
        out.pis[t] = std::move(pi);
    }
    return out;
}

PropelinearCertificate translation_certificate(const CodeHandle& code, std::uint64_t max_codewords) {
    PropelinearCertificate cert;
    const unsigned q = code.q();
    const std::size_t len = static_cast<std::size_t>(code.length());
    enumerate(code, [&](std::span<const Element> x) {
        Isometry phi = Isometry::identity(q, len);
        for (std::size_t k = 0; k < len; ++k) {
            for (unsigned s = 0; s < q; ++s) phi.pis[k][s] = static_cast<Element>((s + x[k]) % q);
        }
        cert.emplace(CodewordKey(x.begin(), x.end()), std::move(phi));
    }, max_codewords);
    return cert;
}

Report check_propelinear_certificate(const CodeHandle& code, const PropelinearCertificate& cert, std::uint64_t samples,
                                     std::uint64_t seed) {
    Report rep{"certificate", Outcome::pass, {}};
    const unsigned q = code.q();
    const std::size_t len = static_cast<std::size_t>(code.length());

    std::vector<CodewordKey> words;
    std::vector<const Isometry*> phis;
    std::uint64_t missing = 0;
    enumerate(code, [&](std::span<const Element> w) {
        words.emplace_back(w.begin(), w.end());
        const auto it = cert.find(words.back());
        if (it == cert.end()) ++missing;
        phis.push_back(it == cert.end() ? nullptr : &it->second);
    });
    rep.details["codewords"] = words.size();
    rep.details["certificate_entries"] = cert.size();

    auto fail = [&](const std::string& stage, const std::string& why) {
        rep.result = Outcome::fail;
        rep.details["failed_check"] = stage;
        rep.details["reason"] = why;
        return rep;
    };

    if (missing != 0) return fail("domain", std::to_string(missing) + " codewords have no isometry");
    if (cert.size() != words.size()) return fail("domain", "certificate has entries outside the code");
    for (const Isometry* phi : phis) {
        try {
            if (phi->length() != len) throw std::invalid_argument("isometry has wrong length");
            phi->validate(q);
        } catch (const std::invalid_argument& e) {
            return fail("domain", e.what());
        }
    }

    // (ii) phi_x(0) = x
    const std::vector<Element> zero(len, 0);
    std::vector<Element> image;
    for (std::size_t i = 0; i < words.size(); ++i) {
        apply_raw(*phis[i], zero, image);
        if (image != words[i]) return fail("(ii) phi_x(0) = x", "phi_x(0) differs from x");
    }

    const bool exhaustive = words.size() <= kFullCertificateCodeSize;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
    const std::uint64_t pair_count =
        exhaustive ? static_cast<std::uint64_t>(words.size()) * words.size() : samples;

    // (i) phi_x(S) is inside S; injectivity makes it onto.
    std::uint64_t checked_i = 0;
    for (std::uint64_t p = 0; p < pair_count; ++p) {
        const std::size_t xi = exhaustive ? p / words.size() : pick(rng);
        const std::size_t wi = exhaustive ? p % words.size() : pick(rng);
        apply_raw(*phis[xi], words[wi], image);
        if (!contains(code, image)) return fail("(i) phi_x(S) = S", "isometry moves a codeword outside the code");
        ++checked_i;
    }

    // (iii) phi_x o phi_y = phi_{phi_x(y)}
    std::uint64_t checked_iii = 0;
    for (std::uint64_t p = 0; p < pair_count; ++p) {
        const std::size_t xi = exhaustive ? p / words.size() : pick(rng);
        const std::size_t yi = exhaustive ? p % words.size() : pick(rng);
        apply_raw(*phis[xi], words[yi], image);
        const auto it = cert.find(image);
        if (it == cert.end()) return fail("(iii) closure", "phi_x(y) is not in the certificate");
        if (!composes_to(*phis[xi], *phis[yi], it->second, q) &&
            !agree_on_code(*phis[xi], *phis[yi], it->second, words)) {
            return fail("(iii) closure", "phi_x o phi_y differs from phi_{phi_x(y)} on a codeword");
        }
        ++checked_iii;
    }

    rep.details["mode"] = exhaustive ? "exhaustive" : "sampled";
    rep.details["checked_pairs_preservation"] = checked_i;
    rep.details["checked_pairs_closure"] = checked_iii;
    if (!exhaustive) rep.result = Outcome::probabilistic;
    return rep;
}

}  // namespace propel
