#pragma once

// Sparse exact linear algebra over Q(s): rank, kernel bases, and a
// sampled-rank fast path (always confirmed exactly before anything is
// reported).

#include "scalar.hpp"

#include <map>
#include <ostream>
#include <unordered_map>
#include <vector>

namespace skein {

class SparseMatrix {
public:
    SparseMatrix(size_t rows, size_t cols) : rows_(rows), cols_(cols) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }

    void set(size_t r, size_t c, Scalar v) {
        check(r, c);
        if (v.is_zero()) entries_[r].erase(c);
        else entries_[r][c] = std::move(v);
        if (entries_.count(r) && entries_[r].empty()) entries_.erase(r);
    }
    void add(size_t r, size_t c, const Scalar& v) {
        if (v.is_zero()) return;
        check(r, c);
        auto& row = entries_[r];
        auto [it, inserted] = row.try_emplace(c, v);
        if (!inserted) {
            it->second += v;
            if (it->second.is_zero()) row.erase(it);
        }
        if (row.empty()) entries_.erase(r);
    }
    Scalar get(size_t r, size_t c) const {
        auto rit = entries_.find(r);
        if (rit == entries_.end()) return Scalar(0);
        auto cit = rit->second.find(c);
        return cit == rit->second.end() ? Scalar(0) : cit->second;
    }

    const std::map<size_t, std::map<size_t, Scalar>>& entries() const { return entries_; }
    size_t nnz() const {
        size_t n = 0;
        for (const auto& [r, row] : entries_) n += row.size();
        return n;
    }

    /// MatrixMarket-style dump for debugging fixtures.
    void dump(std::ostream& os) const {
        os << "%%MatrixMarket matrix coordinate scalar general\n"
           << rows_ << ' ' << cols_ << ' ' << nnz() << '\n';
        for (const auto& [r, row] : entries_)
            for (const auto& [c, v] : row)
                os << r + 1 << ' ' << c + 1 << ' ' << v.str() << '\n';
    }

private:
    void check(size_t r, size_t c) const {
        if (r >= rows_ || c >= cols_) throw std::out_of_range("SparseMatrix: index");
    }
    size_t rows_, cols_;
    std::map<size_t, std::map<size_t, Scalar>> entries_;
};

namespace detail {

inline bool is_zero_val(const Scalar& s) { return s.is_zero(); }
inline bool is_zero_val(const Rat& r) { return r == 0; }

// Shared elimination core parameterized over the field element type.
// Rows are sparse maps col -> value; Markowitz-flavored pivoting: pick the
// pivot minimizing (row_nnz-1)*(col_nnz-1), ties by smallest value
// complexity, then by position (deterministic).
template <typename F, typename Complexity>
size_t eliminate(std::vector<std::map<size_t, F>>& rws, Complexity cx,
                 std::vector<std::pair<size_t, std::map<size_t, F>>>* echelon = nullptr) {
    size_t rank = 0;
    std::vector<bool> done(rws.size(), false);
    std::vector<std::pair<size_t, size_t>> pivots; // (row, col)
    for (;;) {
        // column occupancy among remaining rows
        std::unordered_map<size_t, size_t> colcnt;
        for (size_t i = 0; i < rws.size(); ++i)
            if (!done[i])
                for (const auto& [c, v] : rws[i]) { (void)v; ++colcnt[c]; }
        long best_score = -1;
        size_t br = 0, bc = 0;
        long best_cx = 0;
        for (size_t i = 0; i < rws.size(); ++i) {
            if (done[i] || rws[i].empty()) continue;
            for (const auto& [c, v] : rws[i]) {
                long score = static_cast<long>(rws[i].size() - 1) *
                             static_cast<long>(colcnt[c] - 1);
                long vc = cx(v);
                if (best_score < 0 || score < best_score ||
                    (score == best_score && vc < best_cx)) {
                    best_score = score;
                    best_cx = vc;
                    br = i;
                    bc = c;
                }
            }
        }
        if (best_score < 0) break;
        ++rank;
        done[br] = true;
        F pivot = rws[br][bc];
        // normalize the pivot row
        for (auto& [c, v] : rws[br]) v = v / pivot;
        for (size_t i = 0; i < rws.size(); ++i) {
            if (i == br) continue;
            // when the echelon is wanted, earlier pivot rows keep getting
            // back-substituted; otherwise finished rows can be dropped
            if (done[i] && !echelon) continue;
            auto it = rws[i].find(bc);
            if (it == rws[i].end()) continue;
            F f = it->second;
            rws[i].erase(it);
            for (const auto& [c, v] : rws[br]) {
                if (c == bc) continue;
                auto [jt, ins] = rws[i].try_emplace(c, F(0));
                jt->second = jt->second - f * v;
                if (is_zero_val(jt->second)) rws[i].erase(jt);
                (void)ins;
            }
        }
        pivots.push_back({br, bc});
        if (!echelon) rws[br].clear();
    }
    if (echelon)
        for (const auto& [r, c] : pivots) echelon->push_back({c, rws[r]});
    return rank;
}

template <typename F>
std::vector<std::map<size_t, F>> to_rows(const SparseMatrix& m, const Rat* sample) {
    std::vector<std::map<size_t, F>> rws;
    for (const auto& [r, row] : m.entries()) {
        (void)r;
        std::map<size_t, F> out;
        for (const auto& [c, v] : row) {
            if constexpr (std::is_same_v<F, Rat>) {
                Rat x = v.specialize_at(*sample);
                if (x != 0) out[c] = x;
            } else {
                out[c] = v;
            }
        }
        if (!out.empty()) rws.push_back(std::move(out));
    }
    return rws;
}

} // namespace detail

inline size_t rank_exact(const SparseMatrix& m) {
    auto rws = detail::to_rows<Scalar>(m, nullptr);
    return detail::eliminate<Scalar>(rws, [](const Scalar& v) {
        return static_cast<long>(v.num().term_count() + v.den().term_count());
    });
}

inline size_t rank_at(const SparseMatrix& m, const SamplePoint& p) {
    auto rws = detail::to_rows<Rat>(m, &p.value); // throws PoleError on a pole
    return detail::eliminate<Rat>(rws, [](const Rat& v) {
        return static_cast<long>(mpz_sizeinbase(v.get_num().get_mpz_t(), 2) +
                                 mpz_sizeinbase(v.get_den().get_mpz_t(), 2));
    });
}

/// Basis of the right kernel; every v satisfies m·v = 0 exactly.
inline std::vector<std::vector<Scalar>> kernel_basis(const SparseMatrix& m) {
    auto rws = detail::to_rows<Scalar>(m, nullptr);
    std::vector<std::pair<size_t, std::map<size_t, Scalar>>> ech;
    detail::eliminate<Scalar>(rws, [](const Scalar& v) {
        return static_cast<long>(v.num().term_count() + v.den().term_count());
    }, &ech);
    std::vector<bool> is_pivot(m.cols(), false);
    for (const auto& [pc, row] : ech) { (void)row; is_pivot[pc] = true; }
    std::vector<std::vector<Scalar>> basis;
    for (size_t fc = 0; fc < m.cols(); ++fc) {
        if (is_pivot[fc]) continue;
        std::vector<Scalar> v(m.cols(), Scalar(0));
        v[fc] = Scalar(1);
        // pivot rows are fully reduced against each other, so each pivot
        // coordinate reads off directly
        for (const auto& [pc, row] : ech) {
            auto it = row.find(fc);
            if (it != row.end()) v[pc] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Sampled rank together with the non-pivot columns of the echelon form;
/// those columns index a basis of the cokernel at the sample point.
inline std::pair<size_t, std::vector<size_t>> rank_free_cols_at(const SparseMatrix& m,
                                                                const SamplePoint& p) {
    auto rws = detail::to_rows<Rat>(m, &p.value);
    std::vector<std::pair<size_t, std::map<size_t, Rat>>> ech;
    size_t rank = detail::eliminate<Rat>(rws, [](const Rat& v) {
        return static_cast<long>(mpz_sizeinbase(v.get_num().get_mpz_t(), 2) +
                                 mpz_sizeinbase(v.get_den().get_mpz_t(), 2));
    }, &ech);
    std::vector<bool> is_pivot(m.cols(), false);
    for (const auto& [pc, row] : ech) { (void)row; is_pivot[pc] = true; }
    std::vector<size_t> free_cols;
    for (size_t c = 0; c < m.cols(); ++c)
        if (!is_pivot[c]) free_cols.push_back(c);
    return {rank, free_cols};
}

/// Sampled-rank ladder: the max of several sampled ranks (always ≤ exact
/// rank) with an exact confirmation run.  Returns the exact rank; the
/// samples only provide an early certificate that elimination is consistent.
struct RankWitness {
    size_t exact = 0;
    size_t best_sampled = 0;
    bool sample_matched = false;
};

inline RankWitness rank_with_witness(const SparseMatrix& m, const std::vector<SamplePoint>& samples) {
    RankWitness w;
    for (const auto& p : samples) {
        try {
            w.best_sampled = std::max(w.best_sampled, rank_at(m, p));
        } catch (const PoleError&) {
            // caller-provided sample hit a pole; skip it
        }
    }
    w.exact = rank_exact(m);
    w.sample_matched = w.best_sampled == w.exact;
    return w;
}

} // namespace skein
