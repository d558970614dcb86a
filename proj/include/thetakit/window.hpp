#ifndef THETAKIT_WINDOW_HPP
#define THETAKIT_WINDOW_HPP

// A finite full subcategory of Theta_n: all objects of size <= bound, with
// every hom-set tabulated. Morphisms carry global ids; composition and rank
// are computed arithmetically through the window one level down.

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "delta.hpp"
#include "errors.hpp"
#include "theta.hpp"

namespace thetakit {

class Window {
public:
    using Ptr = std::shared_ptr<const Window>;

    /// Shared instance for (level, bound).
    static Ptr get(int level, int bound)
    {
        static std::mutex mu;
        static std::map<std::pair<int, int>, Ptr> cache;
        std::lock_guard<std::mutex> lock(mu);
        if (level < 0 || bound < 0)
            throw ArgumentError("window needs level, bound >= 0");
        return build_unlocked(level, bound, cache);
    }

    int level() const noexcept { return level_; }
    int bound() const noexcept { return bound_; }
    const Window* lower() const noexcept { return lower_.get(); }
    const Ptr& lower_ptr() const noexcept { return lower_; }

    int object_count() const noexcept { return static_cast<int>(objects_.size()); }
    const std::vector<ThetaObject>& objects() const noexcept { return objects_; }
    const ThetaObject& object(int a) const { return objects_.at(a); }

    /// -1 when absent.
    int index_of(const ThetaObject& o) const
    {
        if (o.level() != level_)
            return -1;
        auto it = index_.find(o.str());
        return it == index_.end() ? -1 : it->second;
    }

    /// Like index_of, but an absent object is a window exhaustion.
    int require(const ThetaObject& o) const
    {
        if (o.level() != level_)
            throw ArgumentError("object " + o.str() + " has level " + std::to_string(o.level()) + ", window has level " +
                                std::to_string(level_));
        int a = index_of(o);
        if (a < 0)
            throw WindowExhausted("object outside the window of bound " + std::to_string(bound_), o.str());
        return a;
    }

    /// Child ids (1-based i) in the lower window.
    int child(int a, int i) const { return children_[a].at(i - 1); }
    int arity(int a) const { return static_cast<int>(children_[a].size()); }

    int morphism_count() const noexcept { return static_cast<int>(src_.size()); }
    int src(int f) const { return src_[f]; }
    int dst(int f) const { return dst_[f]; }
    const MonotoneMap& delta(int f) const { return delta_[f]; }
    /// Component ids in the lower window, flat over j in (delta(0), delta(m)].
    const std::vector<int>& comps(int f) const { return comps_[f]; }
    const ThetaMorphism& morphism(int f) const { return morphisms_[f]; }

    int hom_begin(int a, int b) const { return pair_begin_[a * object_count() + b]; }
    int hom_size(int a, int b) const { return pair_size_[a * object_count() + b]; }
    int local_index(int f) const { return f - hom_begin(src_[f], dst_[f]); }
    /// Morphism ids with the given target (resp. source).
    const std::vector<int>& into(int b) const { return into_[b]; }
    const std::vector<int>& out_of(int a) const { return out_of_[a]; }

    int identity(int a) const { return identity_[a]; }

    /// Unique map a -> terminal.
    int to_terminal(int a) const { return hom_begin(a, terminal_); }
    int terminal() const noexcept { return terminal_; }

    /// g o f by ids.
    int compose(int g, int f) const
    {
        if (dst_[f] != src_[g])
            throw ArgumentError("window compose: " + objects_[dst_[f]].str() + " vs " + objects_[src_[g]].str());
        const int a = src_[f];
        const int c = dst_[g];
        if (level_ == 0)
            return 0;
        const MonotoneMap& d = delta_[f];
        const MonotoneMap& e = delta_[g];
        const MonotoneMap ed = thetakit::compose(e, d);
        std::uint64_t local = 0;
        const int m = arity(a);
        for (int i = 1; i <= m; ++i)
            for (int j = d(i - 1) + 1; j <= d(i); ++j)
                for (int k = e(j - 1) + 1; k <= e(j); ++k) {
                    const int h = lower_->compose(comps_[g][k - e(0) - 1], comps_[f][j - d(0) - 1]);
                    local = local * static_cast<std::uint64_t>(lower_->hom_size(child(a, i), child(c, k))) +
                            static_cast<std::uint64_t>(lower_->local_index(h));
                }
        return hom_begin(a, c) + delta_offsets_[a * object_count() + c][delta_rank(ed)] + static_cast<int>(local);
    }

    /// Global id of a morphism whose endpoints lie in the window.
    int rank(const ThetaMorphism& f) const
    {
        const int a = require(f.source());
        const int b = require(f.target());
        if (level_ == 0)
            return 0;
        const MonotoneMap& d = f.delta();
        std::uint64_t local = 0;
        for (int i = 1; i <= arity(a); ++i)
            for (int j = d(i - 1) + 1; j <= d(i); ++j) {
                const int h = lower_->rank(f.component(i, j));
                local = local * static_cast<std::uint64_t>(lower_->hom_size(child(a, i), child(b, j))) +
                        static_cast<std::uint64_t>(lower_->local_index(h));
            }
        return hom_begin(a, b) + delta_offsets_[a * object_count() + b][delta_rank(d)] + static_cast<int>(local);
    }

    /// The canonical delta morphism between window objects, by id.
    int canonical(const MonotoneMap& d, int a, int b) const
    {
        return rank(canonical_delta_morphism(d, objects_[a], objects_[b]));
    }

private:
    Window(int level, int bound, Ptr lower) : level_(level), bound_(bound), lower_(std::move(lower))
    {
        objects_ = enumerate_objects(level, bound);
        for (int a = 0; a < object_count(); ++a)
            index_.emplace(objects_[a].str(), a);
        terminal_ = index_.at(ThetaObject::terminal(level).str());
        children_.resize(objects_.size());
        if (level > 0)
            for (int a = 0; a < object_count(); ++a)
                for (const auto& c : objects_[a].children())
                    children_[a].push_back(lower_->require(c));
        const int n = object_count();
        pair_begin_.assign(static_cast<std::size_t>(n) * n, 0);
        pair_size_.assign(static_cast<std::size_t>(n) * n, 0);
        delta_offsets_.resize(static_cast<std::size_t>(n) * n);
        into_.resize(n);
        out_of_.resize(n);
        identity_.assign(n, -1);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                fill_pair(a, b);
        for (int f = 0; f < morphism_count(); ++f) {
            into_[dst_[f]].push_back(f);
            out_of_[src_[f]].push_back(f);
        }
        for (int a = 0; a < n; ++a)
            identity_[a] = rank(identity_theta(objects_[a]));
    }

    void fill_pair(int a, int b)
    {
        const int n = object_count();
        const int begin = morphism_count();
        pair_begin_[a * n + b] = begin;
        auto& offs = delta_offsets_[a * n + b];
        if (level_ == 0) {
            push(a, b, MonotoneMap::identity(0), {}, identity_theta(objects_[a]));
            pair_size_[a * n + b] = 1;
            return;
        }
        const int m = arity(a);
        int running = 0;
        for (const auto& d : enumerate_delta(m, arity(b))) {
            offs.push_back(running);
            std::vector<std::pair<int, int>> ranges; // (begin, size) in the lower window
            bool empty = false;
            for (int i = 1; i <= m; ++i)
                for (int j = d(i - 1) + 1; j <= d(i); ++j) {
                    const int ca = child(a, i);
                    const int cb = child(b, j);
                    ranges.emplace_back(lower_->hom_begin(ca, cb), lower_->hom_size(ca, cb));
                    empty = empty || ranges.back().second == 0;
                }
            if (empty)
                continue;
            std::vector<int> idx(ranges.size(), 0);
            while (true) {
                std::vector<int> ids(ranges.size());
                std::vector<ThetaMorphism> parts;
                parts.reserve(ranges.size());
                for (std::size_t t = 0; t < ranges.size(); ++t) {
                    ids[t] = ranges[t].first + idx[t];
                    parts.push_back(lower_->morphism(ids[t]));
                }
                push(a, b, d, ids, ThetaMorphism(objects_[a], objects_[b], d, std::move(parts)));
                ++running;
                int t = static_cast<int>(ranges.size()) - 1;
                while (t >= 0 && ++idx[t] == ranges[t].second) {
                    idx[t] = 0;
                    --t;
                }
                if (t < 0)
                    break;
            }
        }
        pair_size_[a * n + b] = running;
    }

    void push(int a, int b, const MonotoneMap& d, std::vector<int> ids, ThetaMorphism mor)
    {
        src_.push_back(a);
        dst_.push_back(b);
        delta_.push_back(d);
        comps_.push_back(std::move(ids));
        morphisms_.push_back(std::move(mor));
    }

    static Ptr build_unlocked(int level, int bound, std::map<std::pair<int, int>, Ptr>& cache)
    {
        auto key = std::make_pair(level, bound);
        if (auto it = cache.find(key); it != cache.end())
            return it->second;
        Ptr lower;
        if (level > 0)
            lower = build_unlocked(level - 1, bound > 0 ? bound - 1 : 0, cache);
        Ptr w(new Window(level, bound, lower));
        cache.emplace(key, w);
        return w;
    }

    int level_;
    int bound_;
    Ptr lower_;
    std::vector<ThetaObject> objects_;
    std::unordered_map<std::string, int> index_;
    std::vector<std::vector<int>> children_;
    int terminal_ = 0;

    std::vector<int> src_, dst_;
    std::vector<MonotoneMap> delta_;
    std::vector<std::vector<int>> comps_;
    std::vector<ThetaMorphism> morphisms_;
    std::vector<int> pair_begin_, pair_size_;
    std::vector<std::vector<int>> delta_offsets_;
    std::vector<std::vector<int>> into_, out_of_;
    std::vector<int> identity_;
};

} // namespace thetakit

#endif // THETAKIT_WINDOW_HPP
