#ifndef THETAKIT_SUITES_HPP
#define THETAKIT_SUITES_HPP

// Verification suites: each criterion runs a family of exact checks and
// records every case, with replayable inputs attached to failures.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "cells.hpp"
#include "corpus.hpp"
#include "fibrancy.hpp"
#include "homology.hpp"
#include "intertwine.hpp"
#include "io.hpp"
#include "ncat.hpp"
#include "qpaths.hpp"

namespace thetakit {

struct CaseFailure {
    std::string name;
    std::string witness;
    Json input; // null, or a document accepted by `check --input`
};

struct SuiteResult {
    int id = 0;
    std::string suite;
    std::string title;
    int cases = 0;
    int passed = 0;
    std::vector<CaseFailure> failures;
    double wall_ms = 0;

    bool ok() const { return cases > 0 && passed == cases; }

    Json to_json() const
    {
        Json fails = Json::array();
        for (const auto& f : failures) {
            Json j{{"case", f.name}, {"witness", f.witness}};
            if (!f.input.is_null())
                j["input"] = f.input;
            fails.push_back(j);
        }
        return Json{{"criterion", id}, {"suite", suite},   {"title", title},
                    {"cases", cases},  {"passed", passed}, {"failures", fails}};
    }
};

class CaseLog {
public:
    bool check(bool ok, const std::string& name, const std::string& witness = "", Json input = nullptr)
    {
        ++result_.cases;
        if (ok)
            ++result_.passed;
        else
            result_.failures.push_back({name, witness.empty() ? "check failed" : witness, std::move(input)});
        return ok;
    }

    SuiteResult& result() { return result_; }

private:
    SuiteResult result_;
};

struct SuiteConfig {
    int corpus_random = 10;
    std::uint32_t corpus_seed = 17;
    std::map<int, std::uint32_t> seeds; // per criterion
};

struct Criterion {
    int id = 0;
    std::string suite;
    std::string title;
    std::vector<std::pair<int, int>> windows; // (level, max size)
    std::uint32_t seed = 0;
    std::function<void(CaseLog&, const SuiteConfig&, std::uint32_t)> run;
};

namespace suites {

inline std::vector<NamedCategory> corpus(const SuiteConfig& cfg)
{
    return build_corpus(cfg.corpus_random, cfg.corpus_seed);
}

inline const Window::Ptr& corpus_window(const StrictNCat& c)
{
    static const Window::Ptr w1 = Window::get(1, 4);
    static const Window::Ptr w2 = Window::get(2, 3);
    return c.dimension() == 1 ? w1 : w2;
}

inline int iso_count(const StrictNCat& c)
{
    int out = 0;
    for (int f = 0; f < c.count(1); ++f)
        out += is_k_isomorphism(c, 1, f);
    return out;
}

inline std::string pair_name(const ThetaObject& a, const ThetaObject& b) { return a.str() + " -> " + b.str(); }

inline void hom_oracle(CaseLog& log, const SuiteConfig&, std::uint32_t)
{
    for (auto [level, bound] : {std::pair{2, 4}, std::pair{3, 3}}) {
        const auto objs = enumerate_objects(level, bound);
        for (const auto& a : objs)
            for (const auto& b : objs) {
                const std::uint64_t formula = count_hom(a, b);
                const std::uint64_t functors = enumerate_functors(tau(a)->cat, tau(b)->cat);
                log.check(formula == functors, pair_name(a, b),
                          std::to_string(formula) + " != " + std::to_string(functors));
            }
    }
}

inline void category_axioms(CaseLog& log, const SuiteConfig&, std::uint32_t)
{
    const Window::Ptr w = Window::get(2, 3);
    const int n = w->object_count();
    // compose_theta against the window's independent composition
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            bool ok = true;
            std::string witness;
            for (int f = w->hom_begin(a, b); ok && f < w->hom_begin(a, b) + w->hom_size(a, b); ++f) {
                const ThetaMorphism& fm = w->morphism(f);
                ok = compose_theta(identity_theta(w->object(b)), fm) == fm &&
                     compose_theta(fm, identity_theta(w->object(a))) == fm && w->compose(w->identity(b), f) == f &&
                     w->compose(f, w->identity(a)) == f;
                if (!ok)
                    witness = "unit law fails for " + fm.to_string();
                for (int c = 0; ok && c < n; ++c)
                    for (int g = w->hom_begin(b, c); ok && g < w->hom_begin(b, c) + w->hom_size(b, c); ++g) {
                        ok = w->rank(compose_theta(w->morphism(g), fm)) == w->compose(g, f);
                        if (!ok)
                            witness = "composite of " + fm.to_string() + " and " + w->morphism(g).to_string();
                    }
            }
            log.check(ok, "units and composites from " + pair_name(w->object(a), w->object(b)), witness);
        }
    for (int a = 0; a < n; ++a)
        for (int d = 0; d < n; ++d) {
            bool ok = true;
            std::string witness;
            for (int b = 0; ok && b < n; ++b)
                for (int c = 0; ok && c < n; ++c)
                    for (int f = w->hom_begin(a, b); ok && f < w->hom_begin(a, b) + w->hom_size(a, b); ++f)
                        for (int g = w->hom_begin(b, c); ok && g < w->hom_begin(b, c) + w->hom_size(b, c); ++g) {
                            const int gf = w->compose(g, f);
                            const ThetaMorphism gfm = compose_theta(w->morphism(g), w->morphism(f));
                            for (int h = w->hom_begin(c, d); ok && h < w->hom_begin(c, d) + w->hom_size(c, d); ++h) {
                                const ThetaMorphism& hm = w->morphism(h);
                                ok = w->compose(h, gf) == w->compose(w->compose(h, g), f) &&
                                     compose_theta(hm, gfm) ==
                                         compose_theta(compose_theta(hm, w->morphism(g)), w->morphism(f));
                                if (!ok)
                                    witness = "associativity fails for " + w->morphism(f).to_string() + ", " +
                                              w->morphism(g).to_string() + ", " + hm.to_string();
                            }
                        }
            log.check(ok, "associativity " + pair_name(w->object(a), w->object(d)), witness);
        }
}

inline void product_decomposition(CaseLog& log, const SuiteConfig&, std::uint32_t seed)
{
    const Window::Ptr w = Window::get(2, 4);
    const Window::Ptr& lw = w->lower_ptr();
    const FinPresheaf t = terminal_presheaf(lw);
    const int theta = w->require(ThetaObject::parse("[1]([0])", 2));
    {
        const auto rep = check_product_decomposition(w, t, t);
        const int v2 = v_object(w, {&t, &t}).presheaf.size(theta);
        const int v1 = v_object(w, {&t}).presheaf.size(theta);
        const bool ok = rep.report.ok() && v2 == 6 && v1 == 3 && v2 + v2 - v1 == 9 && rep.pushout_sizes[theta] == 9 &&
                        rep.product_sizes[theta] == 9;
        log.check(ok, "terminal inputs at [1]([0])",
                  std::to_string(v2) + "+" + std::to_string(v2) + "-" + std::to_string(v1) + " = " +
                      std::to_string(rep.pushout_sizes[theta]) + " vs " + std::to_string(rep.product_sizes[theta]));
    }
    std::mt19937 rng(seed);
    for (int i = 0; i < 20; ++i) {
        const FinPresheaf a = random_simplicial_presheaf(lw, rng);
        const FinPresheaf b = random_simplicial_presheaf(lw, rng);
        const auto rep = check_product_decomposition(w, a, b);
        std::string witness = rep.report.witness;
        if (!rep.report.ok())
            for (int c = 0; c < w->object_count() && witness.empty(); ++c)
                if (rep.pushout_sizes[c] != rep.product_sizes[c])
                    witness = w->object(c).str() + ": " + std::to_string(rep.pushout_sizes[c]) + " vs " +
                              std::to_string(rep.product_sizes[c]);
        log.check(rep.report.ok(), "random pair " + std::to_string(i), witness,
                  Json{{"a", presheaf_to_json(a)}, {"b", presheaf_to_json(b)}});
    }
}

inline void coproduct_decomposition(CaseLog& log, const SuiteConfig&, std::uint32_t)
{
    for (int q = 0; q <= 3; ++q)
        for (int m = 0; m <= 3; ++m)
            for (int n = 0; n <= 3; ++n)
                log.check(check_g_partition(q, m, n), "G(p) partition q=" + std::to_string(q) + " m=" +
                                                          std::to_string(m) + " n=" + std::to_string(n));
    const Window::Ptr w = Window::get(2, 4);
    const Window::Ptr& lw = w->lower_ptr();
    const FinPresheaf t = terminal_presheaf(lw);
    const FinPresheaf e = yoneda(lw, ThetaObject::simplex(1, 1));
    const FinPresheaf two = coproduct(t, t);
    const std::vector<const FinPresheaf*> pool = {&t, &e, &two};
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n) {
            std::vector<const FinPresheaf*> as, bs;
            for (int i = 0; i < m; ++i)
                as.push_back(pool[i % pool.size()]);
            for (int i = 0; i < n; ++i)
                bs.push_back(pool[(i + 1) % pool.size()]);
            const auto rep = check_coproduct_decomposition(w, as, bs);
            log.check(rep.ok(), "V[" + std::to_string(m) + "] + V[" + std::to_string(n) + "]", rep.witness);
        }
}

inline std::vector<SimplicialSubset> covers_of(int m)
{
    std::vector<SimplicialSubset> out;
    for (const auto& k : enumerate_face_closed(m))
        if (is_cover(k))
            out.push_back(k);
    return out;
}

inline std::vector<MonotoneMap> sequential_maps(int p, int m)
{
    std::vector<MonotoneMap> out;
    for (const auto& d : enumerate_delta(p, m))
        if (d.is_sequential())
            out.push_back(d);
    return out;
}

inline std::string faces_text(const SimplicialSubset& k)
{
    std::string s;
    for (const auto& f : k.face_strings())
        s += (s.empty() ? "" : ",") + f;
    return "{" + s + "}";
}

inline void cover_closure(CaseLog& log, const SuiteConfig&, std::uint32_t seed)
{
    auto pullbacks = [&](const SimplicialSubset& k, int max_p) {
        for (int p = 0; p <= max_p; ++p)
            for (const auto& d : sequential_maps(p, k.ambient_rank())) {
                const auto pk = pullback_cover(d, k);
                if (!is_cover(pk))
                    return "(2) fails for K = " + faces_text(k) + " along " + d.to_string();
            }
        return std::string();
    };
    auto products = [&](const SimplicialSubset& mk, const SimplicialSubset& nk, int max_p) {
        for (int p = 0; p <= max_p; ++p)
            for (const auto& d1 : sequential_maps(p, mk.ambient_rank()))
                for (const auto& d2 : sequential_maps(p, nk.ambient_rank()))
                    if (!is_cover(product_pullback_cover(d1, d2, mk, nk)))
                        return "(3) fails for " + faces_text(mk) + " x " + faces_text(nk) + " along (" +
                               d1.to_string() + "," + d2.to_string() + ")";
        return std::string();
    };
    for (int m = 0; m <= 3; ++m) {
        log.check(is_cover(SimplicialSubset::full(m)), "(0) F[" + std::to_string(m) + "]");
        log.check(is_cover(SimplicialSubset::spine(m)), "(1) G[" + std::to_string(m) + "]");
        for (const auto& k : covers_of(m)) {
            const auto bad = pullbacks(k, 3);
            log.check(bad.empty(), "(2) " + faces_text(k), bad);
        }
    }
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n)
            for (const auto& mk : covers_of(m))
                for (const auto& nk : covers_of(n)) {
                    const auto bad = products(mk, nk, 3);
                    log.check(bad.empty(), "(3) " + faces_text(mk) + " x " + faces_text(nk), bad);
                }
    std::mt19937 rng(seed);
    std::vector<std::uint32_t> spine_faces;
    for (int i = 0; i < 4; ++i)
        spine_faces.push_back((std::uint32_t{1} << i) | (std::uint32_t{1} << (i + 1)));
    int sampled = 0;
    for (int attempt = 0; sampled < 100 && attempt < 100000; ++attempt) {
        std::vector<std::uint32_t> gens = spine_faces;
        const int extra = std::uniform_int_distribution<int>(0, 3)(rng);
        for (int i = 0; i < extra; ++i)
            gens.push_back(std::uniform_int_distribution<std::uint32_t>(1, 31)(rng));
        const auto k = SimplicialSubset::generated_by(4, gens);
        if (!is_cover(k))
            continue;
        ++sampled;
        std::string bad = pullbacks(k, 4);
        if (bad.empty()) {
            const auto partners = covers_of(sampled % 4);
            bad = products(k, partners[static_cast<std::size_t>(sampled) % partners.size()], 4);
        }
        log.check(bad.empty(), "sampled cover of F[4] " + faces_text(k), bad);
    }
    log.check(sampled == 100, "sampled 100 covers of F[4]", std::to_string(sampled) + " sampled");
    log.check(!is_cover(SimplicialSubset::boundary(2)), "boundary of F[2] is rejected",
              "the boundary of F[2] passed the cover test");
}

inline void qpaths_combinatorics(CaseLog& log, const SuiteConfig&, std::uint32_t seed)
{
    std::vector<std::vector<std::uint64_t>> d(7, std::vector<std::uint64_t>(7, 1));
    for (int m = 1; m <= 6; ++m)
        for (int n = 1; n <= 6; ++n)
            d[m][n] = d[m - 1][n] + d[m][n - 1] + d[m - 1][n - 1];
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; n <= 6; ++n) {
            const auto size = enumerate_Q(m, n).elements.size();
            log.check(size == d[m][n], "|Q_{" + std::to_string(m) + "," + std::to_string(n) + "}|",
                      std::to_string(size) + " vs " + std::to_string(d[m][n]));
        }
    for (int m = 0; m <= 6; ++m)
        for (int n = 0; m + n <= 6; ++n) {
            const auto h = reduced_homology(enumerate_Q(m, n).order);
            log.check(h.vanishes(), "reduced homology of N Q_{" + std::to_string(m) + "," + std::to_string(n) + "}",
                      h.text());
        }
    for (int m = 0; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
            const QPoset q = enumerate_Q(m, n);
            const auto chain = retraction_chain(q);
            std::string bad;
            for (const auto& step : chain) {
                const auto cert = certify_step(q, step);
                if (!cert.ok() && bad.empty())
                    bad = step.name + ": " + cert.witness;
            }
            if (bad.empty() && !isomorphic_to_lower_row(q, chain.back().codomain))
                bad = "final subposet is not Q_{m,n-1}";
            log.check(bad.empty(), "retractions of Q_{" + std::to_string(m) + "," + std::to_string(n) + "}", bad);
        }
    std::mt19937 rng(seed);
    for (int t = 0; t < 50; ++t) {
        const int m = std::uniform_int_distribution<int>(0, 4)(rng);
        const int n = std::uniform_int_distribution<int>(0, 4)(rng);
        const int q = std::uniform_int_distribution<int>(0, 3)(rng);
        auto draw = [&](int top) {
            std::vector<int> v(q + 1);
            for (auto& x : v)
                x = std::uniform_int_distribution<int>(0, top)(rng);
            std::sort(v.begin(), v.end());
            return MonotoneMap(top, v);
        };
        const MonotoneMap a1 = draw(m);
        const MonotoneMap a2 = draw(n);
        const auto rep = check_alpha_product(m, n, a1, a2);
        log.check(rep.ok(), "alpha = (" + a1.to_string() + ", " + a2.to_string() + ") in Q_{" + std::to_string(m) +
                                "," + std::to_string(n) + "}",
                  "subposet " + std::to_string(rep.subposet_size) + ", product " + std::to_string(rep.product_size));
    }
}

inline SimplicialSubset cover_named(int which, int m)
{
    return which == 0 ? SimplicialSubset::spine(m) : SimplicialSubset::full(m);
}

inline void main_square_colimits(CaseLog& log, const SuiteConfig&, std::uint32_t seed)
{
    const Window::Ptr w = Window::get(2, 4);
    const Window::Ptr& lw = w->lower_ptr();
    const FinPresheaf t = terminal_presheaf(lw);
    const char* names[] = {"spine", "full"};
    for (int m = 0; m <= 3; ++m)
        for (int n = 0; n <= 3; ++n)
            for (int mc = 0; mc < 2; ++mc)
                for (int nc = 0; nc < 2; ++nc) {
                    std::vector<const FinPresheaf*> as(m, &t), bs(n, &t);
                    const SquareInputs in{w, as, bs, cover_named(mc, m), cover_named(nc, n)};
                    const auto rep = colim_compare(in);
                    log.check(rep.ok(),
                              "terminal inputs m=" + std::to_string(m) + " n=" + std::to_string(n) + " M=" +
                                  names[mc] + " N=" + names[nc],
                              rep.witness);
                }
    std::mt19937 rng(seed);
    for (int m = 1; m <= 2; ++m)
        for (int n = 1; n <= 2; ++n) {
            std::vector<FinPresheaf> store;
            store.reserve(m + n);
            for (int i = 0; i < m + n; ++i)
                store.push_back(random_simplicial_presheaf(lw, rng));
            std::vector<const FinPresheaf*> as, bs;
            Json inputs = Json::array();
            for (int i = 0; i < m + n; ++i) {
                (i < m ? as : bs).push_back(&store[i]);
                inputs.push_back(presheaf_to_json(store[i]));
            }
            const int mc = (m + n) % 2;
            const int nc = 1 - mc;
            const SquareInputs in{w, as, bs, cover_named(mc, m), cover_named(nc, n)};
            const auto rep = colim_compare(in);
            log.check(rep.ok(),
                      "random inputs m=" + std::to_string(m) + " n=" + std::to_string(n) + " M=" + names[mc] +
                          " N=" + names[nc],
                      rep.witness, Json{{"inputs", inputs}});
        }
}

inline void p_k_identities(CaseLog& log, const SuiteConfig&, std::uint32_t)
{
    const Window::Ptr w = Window::get(2, 4);
    const Window::Ptr& lw = w->lower_ptr();
    std::vector<FinPresheaf> reps;
    for (int k = 0; k <= 2; ++k)
        reps.push_back(yoneda(lw, ThetaObject::simplex(1, k)));
    for (int m = 1; m <= 3; ++m)
        for (const auto& k : covers_of(m))
            for (int variant = 0; variant < 3; ++variant) {
                std::vector<const FinPresheaf*> as;
                for (int i = 0; i < m; ++i)
                    as.push_back(&reps[static_cast<std::size_t>(variant + i) % reps.size()]);
                const auto rep = p_k_colim_check(w, k, as);
                log.check(rep.ok(), "K = " + faces_text(k) + " inputs " + std::to_string(variant), rep.witness);
            }
}

inline void yoneda_compatibility(CaseLog& log, const SuiteConfig&, std::uint32_t)
{
    const Window::Ptr w = Window::get(2, 4);
    for (const auto& theta : w->objects()) {
        const auto tt = tau(theta);
        const FinPresheaf dn = dnerve(tt->cat, w);
        const FinPresheaf f = yoneda(w, theta);
        const int t = w->require(theta);
        PresheafMap m;
        std::string bad;
        for (int a = 0; a < w->object_count() && bad.empty(); ++a) {
            std::vector<NFunctor> fs;
            enumerate_functors(tau(w->object(a))->cat, tt->cat, [&](const NFunctor& g) {
                fs.push_back(g);
                return true;
            });
            m.comp.emplace_back();
            if (static_cast<int>(fs.size()) != f.size(a) || dn.size(a) != f.size(a)) {
                bad = "size mismatch at " + w->object(a).str();
                break;
            }
            for (int e = 0; e < f.size(a); ++e) {
                const auto img = tau_map(w->morphism(w->hom_begin(a, t) + e));
                const auto it = std::lower_bound(fs.begin(), fs.end(), img);
                if (it == fs.end() || *it != img) {
                    bad = "tau of a morphism into " + theta.str() + " is not among the functors";
                    break;
                }
                m.comp.back().push_back(static_cast<int>(it - fs.begin()));
            }
        }
        if (bad.empty() && !is_levelwise_bijective(m, dn))
            bad = "not a bijection";
        if (bad.empty())
            if (auto nat = check_natural(m, f, dn))
                bad = *nat;
        log.check(bad.empty(), theta.str(), bad);
    }
}

inline void rigid_iff_complete(CaseLog& log, const SuiteConfig& cfg, std::uint32_t)
{
    const auto cs = corpus(cfg);
    log.check(cs.size() >= 30, "corpus size", std::to_string(cs.size()) + " categories");
    for (const auto& nc : cs) {
        const auto r = check_rigid_iff_complete(nc.cat, corpus_window(nc.cat));
        log.check(r.agree(), nc.name,
                  std::string(r.rigid ? "rigid" : "not rigid") + ", segal " + (r.segal ? "yes" : "no") +
                      ", complete " + (r.complete ? "yes" : "no") + (r.witness.empty() ? "" : ": " + r.witness),
                  ncat_to_json(nc.cat));
    }
    const Window::Ptr w = Window::get(1, 4);
    const auto chaotic = check_complete_discrete(dnerve(chaotic_groupoid(2), w));
    const auto& lc = chaotic.levels.at(0);
    log.check(!chaotic.complete() && lc.witness.find("2 != 4") != std::string::npos,
              "chaotic groupoid fails with 2 != 4", lc.witness);
    const auto poset = check_complete_discrete(dnerve(chain_category(1), w));
    const auto& lp = poset.levels.at(0);
    log.check(poset.complete() && lp.lower_cells == 2 && lp.equivalences == 2, "poset [1] passes with 2 = 2",
              std::to_string(lp.lower_cells) + " vs " + std::to_string(lp.equivalences));
}

inline void z_e_agreement(CaseLog& log, const SuiteConfig&, std::uint32_t seed)
{
    std::mt19937 rng(seed);
    const Window::Ptr w = Window::get(1, 4);
    const StrictNCat e = chaotic_groupoid(2);
    int made = 0;
    while (made < 20) {
        auto c = random_finset_category(rng, 1 + made % 4, 3, 3, 12);
        if (!c)
            continue;
        ++made;
        const auto rep = equivalence_report(dnerve(*c, w));
        const auto isos = static_cast<std::uint64_t>(iso_count(*c));
        const std::uint64_t functors = enumerate_functors(e, *c);
        log.check(rep.z_checked && rep.z_maps == isos && functors == isos && rep.count == isos,
                  "random category " + std::to_string(made) + " (" + std::to_string(c->count(0)) + " objects)",
                  "Map(Z, N C) = " + std::to_string(rep.z_maps) + ", Iso(C) = " + std::to_string(isos) +
                      ", functors = " + std::to_string(functors),
                  ncat_to_json(*c));
    }
}

inline void segal_controls(CaseLog& log, const SuiteConfig& cfg, std::uint32_t)
{
    for (const auto& nc : corpus(cfg)) {
        const auto rep = check_segal_discrete(dnerve(nc.cat, corpus_window(nc.cat)));
        log.check(rep.passes(), "dnerve " + nc.name, rep.text(), ncat_to_json(nc.cat));
    }
    const Window::Ptr w = Window::get(1, 3);
    const FinPresheaf spine = simplicial_subset_presheaf(w, SimplicialSubset::spine(2));
    const auto shape = segal_shape(spine, ThetaObject::simplex(1, 2));
    log.check(!shape.bijective && shape.source_size == 9 && shape.target_size == 10, "spine G[2] fails with 9 vs 10",
              "observed " + std::to_string(shape.source_size) + " vs " + std::to_string(shape.target_size),
              presheaf_to_json(spine));
}

inline void groupoid_characterization(CaseLog& log, const SuiteConfig& cfg, std::uint32_t)
{
    auto record = [&](const FinPresheaf& x, const std::string& name, Json input) {
        const auto r = check_groupoid_discrete(x);
        log.check(r.conditions_agree(), name,
                  std::string("condition (2) ") + (r.condition2 ? "holds" : "fails") + ", condition (3) " +
                      (r.condition3 ? "holds" : "fails") + (r.witness.empty() ? "" : ": " + r.witness),
                  std::move(input));
    };
    for (const auto& nc : corpus(cfg))
        record(dnerve(nc.cat, corpus_window(nc.cat)), "dnerve " + nc.name, ncat_to_json(nc.cat));
    for (auto [level, bound] : {std::pair{1, 4}, std::pair{2, 3}}) {
        const Window::Ptr w = Window::get(level, bound);
        for (int k = 0; k <= 3; ++k) {
            const FinPresheaf c = constant_presheaf(w, k);
            record(c, "constant " + std::to_string(k) + " at level " + std::to_string(level), presheaf_to_json(c));
        }
        for (const auto& theta : w->objects()) {
            const FinPresheaf y = yoneda(w, theta);
            record(y, "representable " + theta.str(), presheaf_to_json(y));
        }
    }
}

inline void cell_identities(CaseLog& log, const SuiteConfig&, std::uint32_t)
{
    const Window::Ptr dw = Window::get(1, 4);
    const Window::Ptr w = Window::get(2, 4);
    const FinPresheaf t = terminal_presheaf(w->lower_ptr());
    for (int m = 0; m <= 4; ++m) {
        // T_# F[m] against V[m](1, ..., 1), matched by delta
        const FinPresheaf y = yoneda(dw, ThetaObject::simplex(1, m));
        const FinPresheaf ts = t_sharp(y, w);
        const std::vector<const FinPresheaf*> ones(m, &t);
        const VPresheaf v = v_object(w, ones);
        const int top = dw->require(ThetaObject::simplex(1, m));
        PresheafMap iso;
        std::string bad;
        for (int a = 0; a < w->object_count() && bad.empty(); ++a) {
            iso.comp.emplace_back();
            const int s = dw->require(ThetaObject::simplex(1, w->arity(a)));
            if (ts.size(a) != v.presheaf.size(a)) {
                bad = "sizes differ at " + w->object(a).str();
                break;
            }
            for (int e = 0; e < ts.size(a); ++e) {
                const MonotoneMap& d = dw->delta(dw->hom_begin(s, top) + e);
                std::vector<int> key = d.values();
                key.resize(key.size() + static_cast<std::size_t>(d(d.src_rank()) - d(0)), 0);
                iso.comp.back().push_back(v.find(a, key));
            }
        }
        if (bad.empty() && !is_levelwise_bijective(iso, v.presheaf))
            bad = "matching by delta is not a bijection";
        if (bad.empty())
            if (auto nat = check_natural(iso, ts, v.presheaf))
                bad = *nat;
        const FinPresheaf back = t_star(ts);
        if (bad.empty() && (back.sizes() != y.sizes() || back.actions() != y.actions()))
            bad = "T^* T_# F[m] differs from F[m]";
        log.check(bad.empty(), "T_# F[" + std::to_string(m) + "]", bad);
    }
    {
        const Window::Ptr& lw = w->lower_ptr();
        for (const auto& theta : w->objects()) {
            std::vector<FinPresheaf> ys;
            for (const auto& c : theta.children())
                ys.push_back(yoneda(lw, c));
            std::vector<const FinPresheaf*> in;
            for (const auto& y : ys)
                in.push_back(&y);
            const auto v = v_object(w, in);
            const auto f = yoneda(w, theta);
            log.check(v.presheaf.sizes() == f.sizes() && v.presheaf.actions() == f.actions(),
                      "V of representables at " + theta.str(), "V[m](F c) differs from F theta");
        }
    }
    for (auto [n, s] : {std::pair{1, 4}, std::pair{2, 4}, std::pair{3, 3}}) {
        const Window::Ptr cw = Window::get(n, s);
        for (int k = 0; k <= n; ++k) {
            const auto cmp = compare_boundaries(cw, k);
            log.check(cmp.ok(), "boundary of O_" + std::to_string(k) + " at level " + std::to_string(n),
                      cmp.injective ? "images differ" : "pushout map is not injective");
        }
        for (int k = 0; k < n; ++k) {
            const auto rep = check_v_cell_shift(cw, k);
            log.check(rep.ok(), "V[1] shifts O_" + std::to_string(k) + " at level " + std::to_string(n),
                      std::string(rep.cell_ok ? "" : "cell ") + (rep.boundary_ok ? "" : "boundary ") +
                          (rep.faces_ok ? "" : "faces"));
        }
    }
    const Window::Ptr mw = Window::get(2, 3);
    const Window::Ptr& ml = mw->lower_ptr();
    const std::vector<FinPresheaf> xs = {yoneda(mw, ThetaObject::parse("[2]([1],[0])", 2)),
                                         yoneda(mw, ThetaObject::parse("[1]([2])", 2)),
                                         product(yoneda(mw, ThetaObject::parse("[1]([1])", 2)),
                                                 yoneda(mw, ThetaObject::parse("[1]([0])", 2)))};
    const std::vector<FinPresheaf> as = {
        yoneda(ml, ThetaObject::simplex(1, 1)), yoneda(ml, ThetaObject::simplex(1, 0)),
        coproduct(yoneda(ml, ThetaObject::simplex(1, 1)), yoneda(ml, ThetaObject::simplex(1, 0))),
        initial_presheaf(ml)};
    for (std::size_t i = 0; i < xs.size(); ++i)
        for (std::size_t j = 0; j < as.size(); ++j) {
            const auto& x = xs[i];
            bool ok = true;
            std::string witness;
            for (int x0 = 0; x0 < x.size(mw->terminal()); ++x0)
                for (int x1 = 0; x1 < x.size(mw->terminal()); ++x1) {
                    const auto rep = check_mapping_lemma(x, as[j], x0, x1);
                    if (!rep.ok() && ok) {
                        ok = false;
                        witness = "endpoints (" + std::to_string(x0) + "," + std::to_string(x1) +
                                  "): " + std::to_string(rep.via_v) + " vs " + std::to_string(rep.via_mapping);
                    }
                }
            log.check(ok, "mapping lemma X" + std::to_string(i) + " A" + std::to_string(j), witness);
        }
}

} // namespace suites

inline const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> all = {
        {1, "axioms", "wreath-hom oracle equivalence", {{2, 4}, {3, 3}}, 0, suites::hom_oracle},
        {2, "axioms", "category axioms for Theta_2 morphisms", {{2, 3}}, 0, suites::category_axioms},
        {3, "decompositions", "product decomposition", {{1, 4}, {2, 4}}, 101, suites::product_decomposition},
        {4, "decompositions", "coproduct decomposition and G(p) partition", {{2, 4}}, 0,
         suites::coproduct_decomposition},
        {5, "covers", "cover closure properties", {}, 105, suites::cover_closure},
        {6, "qpaths", "Q combinatorics", {}, 106, suites::qpaths_combinatorics},
        {7, "qpaths", "main square colimits", {{2, 4}}, 107, suites::main_square_colimits},
        {8, "covers", "P_K colimit identities", {{2, 4}}, 0, suites::p_k_identities},
        {9, "rigidity", "Yoneda compatibility of dnerve", {{2, 4}}, 0, suites::yoneda_compatibility},
        {10, "rigidity", "rigid iff complete", {{1, 4}, {2, 3}}, 0, suites::rigid_iff_complete},
        {11, "rigidity", "Z/E agreement", {{1, 4}}, 111, suites::z_e_agreement},
        {12, "rigidity", "Segal positive and negative controls", {{1, 4}, {2, 3}, {1, 3}}, 0,
         suites::segal_controls},
        {13, "rigidity", "discrete groupoid characterization", {{1, 4}, {2, 3}}, 0,
         suites::groupoid_characterization},
        {14, "decompositions", "cell and mapping identities", {{1, 4}, {2, 4}, {3, 3}, {2, 3}}, 0,
         suites::cell_identities},
    };
    return all;
}

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names = {"axioms", "decompositions", "covers", "qpaths", "rigidity"};
    return names;
}

inline SuiteResult run_criterion(const Criterion& c, const SuiteConfig& cfg)
{
    const auto start = std::chrono::steady_clock::now();
    CaseLog log;
    const auto it = cfg.seeds.find(c.id);
    const std::uint32_t seed = it == cfg.seeds.end() ? c.seed : it->second;
    try {
        c.run(log, cfg, seed);
    } catch (const std::exception& e) {
        log.check(false, "exception", e.what());
    }
    SuiteResult r = std::move(log.result());
    r.id = c.id;
    r.suite = c.suite;
    r.title = c.title;
    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

/// Runs the selected criteria on a worker pool; results come back in id order.
inline std::vector<SuiteResult> run_criteria(const std::vector<int>& ids, const SuiteConfig& cfg, unsigned workers = 0)
{
    std::vector<const Criterion*> todo;
    for (int id : ids) {
        const auto& all = criteria();
        auto it = std::find_if(all.begin(), all.end(), [&](const Criterion& c) { return c.id == id; });
        if (it == all.end())
            throw ArgumentError("no criterion " + std::to_string(id));
        todo.push_back(&*it);
    }
    std::sort(todo.begin(), todo.end(), [](const Criterion* a, const Criterion* b) { return a->id < b->id; });
    std::vector<SuiteResult> out(todo.size());
    if (workers == 0)
        workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, static_cast<unsigned>(todo.size()));
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (std::size_t i = next++; i < todo.size(); i = next++)
            out[i] = run_criterion(*todo[i], cfg);
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < workers; ++i)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    return out;
}

inline std::vector<int> criteria_of_suite(const std::string& suite)
{
    std::vector<int> ids;
    for (const auto& c : criteria())
        if (suite == "all" || c.suite == suite)
            ids.push_back(c.id);
    if (ids.empty())
        throw ArgumentError("unknown suite " + suite);
    return ids;
}

inline Json manifest_to_json(const SuiteConfig& cfg)
{
    Json doc;
    doc["format"] = "thetakit.manifest";
    doc["corpus"] = Json{{"random_count", cfg.corpus_random}, {"seed", cfg.corpus_seed}};
    Json entries = Json::array();
    for (const auto& c : criteria()) {
        Json windows = Json::array();
        for (auto [level, bound] : c.windows)
            windows.push_back(Json{{"level", level}, {"max_size", bound}});
        const auto it = cfg.seeds.find(c.id);
        entries.push_back(Json{{"criterion", c.id},
                               {"suite", c.suite},
                               {"title", c.title},
                               {"windows", windows},
                               {"seed", it == cfg.seeds.end() ? c.seed : it->second}});
    }
    doc["criteria"] = entries;
    return doc;
}

inline std::string write_manifest(const SuiteConfig& cfg) { return dump_document(manifest_to_json(cfg)); }

inline SuiteConfig manifest_from_json(const Json& doc)
{
    detail::expect_format(doc, "thetakit.manifest");
    SuiteConfig cfg;
    if (doc.contains("corpus")) {
        const auto& c = doc.at("corpus");
        cfg.corpus_random = detail::get_as<int>(c, "random_count");
        cfg.corpus_seed = detail::get_as<std::uint32_t>(c, "seed");
        if (cfg.corpus_random < 0)
            throw InputError("negative corpus random_count");
    }
    if (doc.contains("criteria"))
        for (const auto& e : doc.at("criteria")) {
            const int id = detail::get_as<int>(e, "criterion");
            const auto& all = criteria();
            auto it = std::find_if(all.begin(), all.end(), [&](const Criterion& c) { return c.id == id; });
            if (it == all.end())
                throw InputError("manifest names unknown criterion " + std::to_string(id));
            if (e.contains("seed")) {
                const auto seed = detail::get_as<std::uint32_t>(e, "seed");
                if (seed != it->seed)
                    cfg.seeds[id] = seed;
            }
        }
    return cfg;
}

inline std::string result_line(const SuiteResult& r)
{
    return "criterion " + std::to_string(r.id) + " [" + r.suite + "] " + r.title + ": " + (r.ok() ? "PASS" : "FAIL") +
           " (" + std::to_string(r.passed) + "/" + std::to_string(r.cases) + " cases)";
}

} // namespace thetakit

#endif // THETAKIT_SUITES_HPP
