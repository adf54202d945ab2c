#include "polyschwarz/linalg/ordering.hpp"

#include <algorithm>

#include "polyschwarz/errors.hpp"

namespace polyschwarz::linalg {

namespace {

class Dissector {
public:
    Dissector(const CsrMatrix& a, Index leaf_size)
        : a_(a), leaf_size_(leaf_size), tag_(a.rows(), -1), level_(a.rows(), -1) {
        order_.reserve(a.rows());
    }

    std::vector<Index> run() {
        std::vector<Index> all(a_.rows());
        for (Index i = 0; i < a_.rows(); ++i) all[i] = i;
        dissect(std::move(all));
        return std::move(order_);
    }

private:
    // Level structure rooted at `root`, restricted to vertices tagged `t`.
    std::vector<std::vector<Index>> levels_from(Index root, Index t) {
        std::vector<std::vector<Index>> levels;
        ++visit_;
        visit_stamp(root);
        levels.push_back({root});
        while (true) {
            std::vector<Index> next;
            for (Index v : levels.back()) {
                for (Index w : a_.row_cols(v)) {
                    if (tag_[w] == t && !visited(w)) {
                        visit_stamp(w);
                        next.push_back(w);
                    }
                }
            }
            if (next.empty()) break;
            levels.push_back(std::move(next));
        }
        return levels;
    }

    Index degree_in(Index v, Index t) const {
        Index d = 0;
        for (Index w : a_.row_cols(v)) d += (tag_[w] == t && w != v);
        return d;
    }

    void dissect(std::vector<Index> part) {
        if (static_cast<Index>(part.size()) <= leaf_size_) {
            order_.insert(order_.end(), part.begin(), part.end());
            return;
        }
        const Index t = next_tag_++;
        for (Index v : part) tag_[v] = t;

        auto levels = levels_from(part.front(), t);
        std::size_t reached = 0;
        for (const auto& l : levels) reached += l.size();
        if (reached < part.size()) {
            // Disconnected: split into components, then order each one.
            std::vector<std::vector<Index>> comps;
            const Index comp_tag = next_tag_++;
            for (std::size_t k = 0; k < part.size(); ++k) {
                if (tag_[part[k]] == comp_tag) continue;
                auto lv = levels_from(part[k], t);
                std::vector<Index> comp;
                for (const auto& l : lv) comp.insert(comp.end(), l.begin(), l.end());
                for (Index v : comp) tag_[v] = comp_tag;
                comps.push_back(std::move(comp));
            }
            for (auto& comp : comps) {
                if (static_cast<Index>(comp.size()) <= leaf_size_) {
                    order_.insert(order_.end(), comp.begin(), comp.end());
                } else {
                    dissect(std::move(comp));
                }
            }
            return;
        }

        // Pseudo-peripheral root: restart from a minimum-degree vertex of the
        // last level while the eccentricity grows.
        for (int sweep = 0; sweep < 6; ++sweep) {
            const auto& last = levels.back();
            Index cand = last.front();
            Index best = degree_in(cand, t);
            for (Index v : last) {
                Index d = degree_in(v, t);
                if (d < best) {
                    best = d;
                    cand = v;
                }
            }
            auto trial = levels_from(cand, t);
            if (trial.size() <= levels.size()) break;
            levels = std::move(trial);
        }

        const std::size_t depth = levels.size();
        if (depth < 3) {
            order_.insert(order_.end(), part.begin(), part.end());
            return;
        }
        std::size_t mid = 0;
        std::size_t cum = 0;
        while (mid < depth && 2 * (cum + levels[mid].size()) < part.size()) {
            cum += levels[mid].size();
            ++mid;
        }
        mid = std::clamp<std::size_t>(mid, 1, depth - 2);

        for (std::size_t l = 0; l < depth; ++l) {
            for (Index v : levels[l]) level_[v] = static_cast<Index>(l);
        }
        std::vector<Index> lower, upper, separator;
        for (std::size_t l = 0; l < mid; ++l) {
            lower.insert(lower.end(), levels[l].begin(), levels[l].end());
        }
        for (std::size_t l = mid + 1; l < depth; ++l) {
            upper.insert(upper.end(), levels[l].begin(), levels[l].end());
        }
        // Separator vertices without a neighbour above the middle level can
        // move to the lower part.
        for (Index v : levels[mid]) {
            bool touches_upper = false;
            for (Index w : a_.row_cols(v)) {
                if (tag_[w] == t && level_[w] == static_cast<Index>(mid + 1)) {
                    touches_upper = true;
                    break;
                }
            }
            (touches_upper ? separator : lower).push_back(v);
        }
        dissect(std::move(lower));
        dissect(std::move(upper));
        order_.insert(order_.end(), separator.begin(), separator.end());
    }

    void visit_stamp(Index v) { stamp_[v] = visit_; }
    bool visited(Index v) const { return stamp_[v] == visit_; }

    const CsrMatrix& a_;
    Index leaf_size_;
    std::vector<Index> tag_;
    std::vector<Index> level_;
    std::vector<Index> stamp_ = std::vector<Index>(a_.rows(), -1);
    Index visit_ = 0;
    Index next_tag_ = 0;
    std::vector<Index> order_;
};

}  // namespace

std::vector<Index> nested_dissection(const CsrMatrix& a, Index leaf_size) {
    if (a.rows() != a.cols()) throw DimensionError("nested_dissection: not square");
    if (a.rows() == 0) return {};
    return Dissector(a, std::max<Index>(leaf_size, 1)).run();
}

std::vector<Index> invert_permutation(const std::vector<Index>& perm) {
    std::vector<Index> inv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = static_cast<Index>(k);
    return inv;
}

}  // namespace polyschwarz::linalg
