#include <kndual/acceptance.hh>

#include <kndual/algebra.hh>
#include <kndual/duality.hh>
#include <kndual/error.hh>
#include <kndual/kn.hh>
#include <kndual/lattice.hh>
#include <kndual/product_rep.hh>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace kndual
{
    using std::size_t;
    using std::string;
    using std::vector;

    namespace
    {
        /// Collects failures; the criterion passes iff none were recorded.
        class Check
        {
        public:
            auto expect(bool ok, const string & what) -> bool
            {
                ++_checks;
                if (! ok && _failures++ == 0)
                    _first = what;
                return ok;
            }

            auto note(const string & s) -> void { _notes.push_back(s); }
            auto failed() const -> bool { return _failures > 0; }

            auto detail() const -> string
            {
                std::ostringstream out;
                if (_failures > 0)
                    out << _failures << " of " << _checks << " checks failed; first: " << _first;
                else
                    out << _checks << " checks";
                for (auto & n : _notes)
                    out << "; " << n;
                return out.str();
            }

        private:
            size_t _checks = 0, _failures = 0;
            string _first;
            vector<string> _notes;
        };

        /// An algebra under test with the n it is dualized at.
        struct Sample
        {
            string label;
            FiniteAlgebra algebra;
            size_t n;
        };

        auto subalgebras_and_quotients(const FiniteAlgebra & a, const string & label, size_t n) -> vector<Sample>
        {
            vector<Sample> result;
            size_t index = 0;
            for (auto & u : all_subalgebras(a)) {
                auto s = subalgebra(a, u);
                auto name = label + " sub " + std::to_string(index++);
                result.push_back({name, s, n});
                size_t q = 0;
                for (auto & theta : congruence_lattice(s)) {
                    auto count = std::set<Element>(theta.begin(), theta.end()).size();
                    if (count == s.size())
                        continue;
                    result.push_back({name + " / theta " + std::to_string(q++), quotient(s, theta), n});
                }
            }
            return result;
        }

        /// Every subalgebra of K_i x K_j (i, j <= 1) and all their quotients
        /// at n = 1, then distinct random subalgebras of K_0 x K_1 x K_2 at
        /// n = 2.
        auto duality_corpus(const AcceptanceOptions & options, size_t & small_subalgebras) -> vector<Sample>
        {
            vector<Sample> corpus;
            small_subalgebras = 0;
            for (size_t i = 0; i <= 1; ++i)
                for (size_t j = 0; j <= 1; ++j) {
                    auto p = product({build_kn(i).algebra, build_kn(j).algebra});
                    small_subalgebras += all_subalgebras(p).size();
                    auto more = subalgebras_and_quotients(p, "K" + std::to_string(i) + "xK" + std::to_string(j), 1);
                    corpus.insert(corpus.end(), more.begin(), more.end());
                }
            auto big = product({build_kn(0).algebra, build_kn(1).algebra, build_kn(2).algebra});
            std::mt19937 rng(options.seed);
            std::uniform_int_distribution<Element> pick(0, Element(big.size() - 1));
            std::uniform_int_distribution<int> seeds(1, 3);
            std::set<Subset> seen;
            for (int attempt = 0; attempt < 2000 && seen.size() < 20; ++attempt) {
                Subset seed(big.size());
                for (int k = seeds(rng); k > 0; --k)
                    seed.set(pick(rng));
                auto u = generate(big, seed);
                if (! seen.insert(u).second)
                    continue;
                corpus.push_back({"K0xK1xK2 random " + std::to_string(seen.size()), subalgebra(big, u), 2});
            }
            return corpus;
        }

        auto same_set(const vector<vector<Element>> & a, const vector<vector<Element>> & b) -> bool
        {
            return std::set<vector<Element>>(a.begin(), a.end()) == std::set<vector<Element>>(b.begin(), b.end());
        }

        /// Negation is an involution that preserves the knowledge order and
        /// reverses the truth order; each binary operation is monotone in
        /// the order of its own reduct.
        auto bilattice_properties(Check & check, const FiniteAlgebra & a, const string & label) -> void
        {
            bool neg = true, monotone = true;
            for (Element x = 0; x < a.size(); ++x) {
                neg = neg && a.neg(a.neg(x)) == x;
                for (Element y = 0; y < a.size(); ++y) {
                    bool k = a.k_leq(x, y), t = a.t_leq(x, y);
                    neg = neg && (! k || a.k_leq(a.neg(x), a.neg(y))) && (! t || a.t_leq(a.neg(y), a.neg(x)));
                    if (! k && ! t)
                        continue;
                    for (Element z = 0; z < a.size() && monotone; ++z)
                        monotone = (! k || (a.k_leq(a.kmeet(x, z), a.kmeet(y, z)) && a.k_leq(a.kjoin(x, z), a.kjoin(y, z))))
                            && (! t || (a.t_leq(a.tmeet(x, z), a.tmeet(y, z)) && a.t_leq(a.tjoin(x, z), a.tjoin(y, z))));
                }
            }
            check.expect(neg, "negation on " + label);
            check.expect(monotone, "monotone operations on " + label);
        }

        auto random_poset(std::mt19937 & rng, size_t n, double density) -> Poset
        {
            std::bernoulli_distribution edge(density);
            vector<std::pair<size_t, size_t>> pairs;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = i + 1; j < n; ++j)
                    if (edge(rng))
                        pairs.emplace_back(i, j);
            return Poset::generated_by(n, pairs);
        }

        auto random_semi_constant(std::mt19937 & rng, const Poset & lower, const Poset & upper) -> MonotoneMap
        {
            vector<size_t> table(upper.size());
            for (auto & block : order_components(upper)) {
                auto v = std::uniform_int_distribution<size_t>(0, lower.size() - 1)(rng);
                for (auto x : block)
                    table[x] = v;
            }
            return MonotoneMap(upper, lower, table);
        }

        auto singleton_doubling(size_t n) -> Poset
        {
            vector<Poset> layers(n + 1, Poset::antichain(1));
            vector<MonotoneMap> links(n, MonotoneMap(layers[0], layers[0], {0}));
            return doubling(layers, links);
        }

        auto criterion_1(Check & c, const AcceptanceOptions &) -> void
        {
            auto free0 = free_algebra(0, 1);
            c.expect(free0.algebra.size() == 36, "free algebra on one generator in V_0 by E-enumeration");
            c.expect(free_algebra_count_by_maps(0, 1) == 36, "V_0 count by maps");
            c.expect(free_algebra_count(0, 1) == 36, "V_0 count by up-sets");
            auto n1 = free_algebra_count(1, 1);
            c.expect(n1 == 5879, "V_1 count by up-sets is " + std::to_string(n1));
            c.expect(free_algebra_count_by_maps(1, 1) == n1, "V_1 count by maps");
            c.note("36 and " + std::to_string(n1));
        }

        auto criterion_2(Check & c, const AcceptanceOptions & o) -> void
        {
            for (size_t n = 0; n <= std::max<size_t>(2, std::min<size_t>(o.max_n, 3)); ++n) {
                auto k = build_kn(n).algebra;
                auto subs = all_subalgebras(product({k, k}));
                std::set<Subset> expected;
                Subset full((3 * n + 4) * (3 * n + 4));
                full.set();
                expected.insert(full);
                for (size_t m = 0; m <= n; ++m) {
                    auto s = s_nm(n, m);
                    auto r = relation_subset(s), rc = relation_subset(s.converse());
                    expected.insert(r);
                    expected.insert(rc);
                    expected.insert(r & rc);
                }
                c.expect(subs.size() == 3 * n + 4, "census size for n = " + std::to_string(n));
                c.expect(std::set<Subset>(subs.begin(), subs.end()) == expected, "census list for n = " + std::to_string(n));
            }
        }

        auto criterion_3(Check & c, const AcceptanceOptions &) -> void
        {
            for (size_t n = 1; n <= 2; ++n) {
                size_t total = 0;
                for (size_t i = 0; i <= n; ++i)
                    for (size_t j = 0; j <= n; ++j)
                        total += all_subalgebras(product({build_kn(i).algebra, build_kn(j).algebra})).size();
                auto formula = (n + 1) * (2 * n * n + 9 * n + 8) / 2;
                c.expect(total == formula, "n = " + std::to_string(n) + ": " + std::to_string(total) + " vs "
                        + std::to_string(formula));
                c.note("n=" + std::to_string(n) + ": " + std::to_string(total));
            }
        }

        auto criterion_4(Check & c, const AcceptanceOptions & o) -> void
        {
            for (size_t n = 0; n <= std::max<size_t>(4, o.max_n); ++n) {
                auto kn = build_kn(n).algebra;
                auto cons = congruence_lattice(kn);
                auto tag = "n = " + std::to_string(n);
                c.expect(cons.size() == n + 2, tag + ": " + std::to_string(cons.size()) + " congruences");
                bool chain = true;
                for (auto & a : cons)
                    for (auto & b : cons)
                        chain = chain && (congruence_leq(a, b) || congruence_leq(b, a));
                c.expect(chain, tag + ": congruences form a chain");
                std::set<Congruence> kernels{total_congruence(kn.size()), identity_congruence(kn.size())};
                for (size_t m = 0; m < n; ++m) {
                    auto ker = kernel(h_nm(n, m));
                    kernels.insert(ker);
                    c.expect(find_isomorphism(quotient(kn, ker), build_kn(m).algebra).has_value(),
                        tag + ": quotient by ker h_{n," + std::to_string(m) + "}");
                }
                c.expect(std::set<Congruence>(cons.begin(), cons.end()) == kernels, tag + ": congruences are the kernels");
            }
        }

        auto criterion_5(Check & c, const AcceptanceOptions &) -> void
        {
            for (size_t i = 0; i <= 3; ++i)
                for (size_t j = 0; j <= 3; ++j) {
                    auto count = homs(build_kn(i).algebra, build_kn(j).algebra).size();
                    c.expect(count == (j <= i ? 1u : 0u),
                        "|homs(K_" + std::to_string(i) + ", K_" + std::to_string(j) + ")| = " + std::to_string(count));
                }
            for (size_t m = 0; m <= 2; ++m) {
                auto size = 3 * m + 4;
                auto r = relation_subset(s_nm(m, m));
                vector<Element> first, second;
                for (auto p = r.find_first(); p != Subset::npos; p = r.find_next(p)) {
                    first.push_back(Element(p / size));
                    second.push_back(Element(p % size));
                }
                c.expect(same_set(homs(s_nm_algebra(m, m), build_kn(m).algebra), {first, second}),
                    "homs(S_mm, K_m) are the projections for m = " + std::to_string(m));
            }
        }

        auto criterion_6(Check & c, const AcceptanceOptions & o) -> void
        {
            size_t small = 0;
            auto corpus = duality_corpus(o, small);
            c.expect(small >= 7, "at least 7 subalgebras of K_i x K_j");
            size_t random = 0;
            for (auto & s : corpus) {
                random += s.n == 2;
                c.expect(evaluation_map(s.algebra, s.n).is_isomorphism(), "e_a on " + s.label);
            }
            c.expect(random >= 20, "at least 20 random subalgebras of K_0 x K_1 x K_2");
            c.note(std::to_string(corpus.size()) + " algebras (" + std::to_string(small) + " subalgebras of K_i x K_j, "
                + std::to_string(random) + " random at n=2)");
        }

        auto criterion_7(Check & c, const AcceptanceOptions & o) -> void
        {
            for (size_t n = 1; n <= std::max<size_t>(2, std::min<size_t>(o.max_n, 3)); ++n) {
                for (size_t m = 0; m <= n; ++m)
                    for (auto kind : {DropKind::relation, DropKind::link}) {
                        if (kind == DropKind::link && m == 0)
                            continue;
                        auto tag = string(kind == DropKind::relation ? "S" : "h") + " at n = " + std::to_string(n)
                            + ", m = " + std::to_string(m);
                        auto w = optimality_witness(n, {kind, m});
                        c.expect(! w.non_evaluations.empty(), tag + ": non-evaluation exists");
                        c.expect(w.construction_found, tag + ": construction is among the non-evaluations");
                        c.expect(non_evaluation_maps(w.test_algebra, n, Retained::all(n)).empty(),
                            tag + ": full alter ego admits only evaluations");
                    }
            }
        }

        auto criterion_8(Check & c, const AcceptanceOptions & o) -> void
        {
            size_t small = 0;
            for (auto & s : duality_corpus(o, small)) {
                auto recon = priestley_reconstruction(dualize(s.algebra, s.n).space);
                auto reduct = DistLattice::from_order(s.algebra.knowledge_order());
                c.expect(find_lattice_isomorphism(K(recon).lattice, reduct).has_value(), "reconstruction of " + s.label);
            }
            for (size_t n = 0; n <= std::max<size_t>(5, o.max_n); ++n) {
                auto recon = priestley_reconstruction(dualize(build_kn(n).algebra, n).space);
                c.expect(count_up_sets(recon) == 3 * n + 4, "up-sets of the K_" + std::to_string(n) + " reconstruction");
                c.expect(count_up_sets(singleton_doubling(n)) == 3 * n + 4, "up-sets of the doubled chain, n = "
                        + std::to_string(n));
            }
        }

        auto criterion_9(Check & c, const AcceptanceOptions &) -> void
        {
            vector<DistLattice> lattices;
            for (size_t size = 0; size <= 5; ++size)
                for (auto & p : enumerate_posets(size))
                    lattices.push_back(K(p).lattice);
            vector<LatticeDual> duals;
            for (auto & l : lattices)
                duals.push_back(H(l));
            size_t total = 0, semi = 0;
            for (size_t a = 0; a < lattices.size(); ++a)
                for (size_t b = 0; b < lattices.size(); ++b)
                    for (auto & f : lattice_homs(lattices[a], lattices[b])) {
                        auto d = hom_dual(f, duals[a], duals[b]);
                        ++total;
                        semi += d.semi_constant;
                        c.expect(d.verdicts_agree(), "hom between lattices " + std::to_string(a) + " and " + std::to_string(b));
                    }
            c.note(std::to_string(lattices.size()) + " lattices, " + std::to_string(total) + " homs, "
                + std::to_string(semi) + " semi-constant");
        }

        auto criterion_10(Check & c, const AcceptanceOptions & o) -> void
        {
            size_t small = 0, sequences = 0;
            for (auto & s : duality_corpus(o, small)) {
                auto r = product_representation(s.algebra, s.n);
                c.expect(r.iso.size() == s.algebra.size(), "product representation of " + s.label);
                auto report = transport_check(r.product);
                ++sequences;
                c.expect(report.ok(), "transport on the sequence of " + s.label + ": " + report.first_mismatch);
            }
            for (size_t n = 0; n <= std::max<size_t>(3, o.max_n); ++n) {
                auto kn = build_kn(n).algebra;
                auto r = product_representation(kn, n);
                c.expect(r.product.universe.size() == 3 * n + 4, "|A| = 3n+4 for n = " + std::to_string(n));
                c.expect(find_sequence_isomorphism(r.sequence.sequence, all_two_sequence(n)).has_value(),
                    "all-two sequence for K_" + std::to_string(n));
                bool matches = true;
                for (Element x = 0; x < kn.size(); ++x)
                    matches = matches && phi(n, r.product.universe[r.iso[x]]) == x;
                c.expect(matches, "iso is inverse to phi for n = " + std::to_string(n));
                auto all_two = build_product(all_two_sequence(n));
                c.expect(all_two.universe.size() == 3 * n + 4, "all-two product size for n = " + std::to_string(n));
                c.expect(transport_check(all_two).ok(), "transport on the all-two sequence, n = " + std::to_string(n));
                c.expect(truth_order_lex_check(n), "lexicographic truth order for n = " + std::to_string(n));
                sequences += 2;
            }
            c.note(std::to_string(sequences) + " sequences compared");
        }

        auto criterion_11(Check & c, const AcceptanceOptions &) -> void
        {
            for (size_t n = 1; n <= 2; ++n) {
                auto k = build_kn(n).algebra;
                auto sq = product({k, k});
                for (auto & u : all_subalgebras(sq))
                    c.expect(quasivariety_evaluation_map(subalgebra(sq, u), n).is_isomorphism(),
                        "single-sorted e_a at n = " + std::to_string(n));
                auto verdict = check_quasi_dual_object({quasivariety_alter_ego(n).relations});
                c.expect(verdict.valid, "alter ego conditions at n = " + std::to_string(n) + ": " + verdict.detail);
            }
        }

        auto criterion_12(Check & c, const AcceptanceOptions & o) -> void
        {
            size_t posets = 0;
            for (size_t size = 0; size <= 8; ++size)
                for (auto & p : enumerate_posets(size)) {
                    ++posets;
                    auto u = K(p).lattice;
                    c.expect(find_poset_isomorphism(H(u).order, p).has_value(), "H K p for a poset of size "
                            + std::to_string(size));
                    bool kh = true;
                    try {
                        kh_iso(u);
                    }
                    catch (const IsoFailure &) {
                        kh = false;
                    }
                    c.expect(kh, "K H l for an up-set lattice of size " + std::to_string(u.size()));
                }
            c.note(std::to_string(posets) + " posets");

            std::mt19937 rng(o.seed);
            for (int trial = 0; trial < 200; ++trial) {
                auto s = random_poset(rng, 1 + trial % 6, 0.3);
                auto t = random_poset(rng, 1 + (trial / 6) % 7, 0.3);
                auto sum = restricted_linear_sum(s, t, random_semi_constant(rng, s, t));
                auto us = count_up_sets(s), ut = count_up_sets(t), u = count_up_sets(sum);
                c.expect(u + 1 >= us + ut && u <= us * ut, "up-set bounds on a restricted linear sum");
            }

            for (size_t n = 0; n <= std::max<size_t>(4, o.max_n); ++n)
                bilattice_properties(c, build_kn(n).algebra, "K_" + std::to_string(n));
            for (size_t n = 0; n <= 2; ++n)
                for (size_t m = 0; m <= n; ++m)
                    bilattice_properties(c, s_nm_algebra(n, m), "S_{n,m}");
            size_t small = 0;
            for (auto & s : duality_corpus(o, small)) {
                bilattice_properties(c, s.algebra, s.label);
                bilattice_properties(c, evaluation_map(s.algebra, s.n).evaluated.algebra, "E D of " + s.label);
            }
            bilattice_properties(c, free_algebra(0, 1).algebra, "free algebra in V_0");
            for (size_t n = 0; n <= 3; ++n)
                bilattice_properties(c, build_product(all_two_sequence(n)).algebra, "all-two product");
            auto four = DistLattice::boolean(2), two = DistLattice::chain(2);
            bilattice_properties(c, build_product(make_sequence({four, four}, {{0, 1, 2, 3}})).algebra, "2^2 twice");
            bilattice_properties(c, build_product(make_sequence({two, four}, {{0, 3}})).algebra, "2 then 2^2");
        }

        struct Criterion
        {
            const char * name;
            std::function<void(Check &, const AcceptanceOptions &)> run;
            double time_limit;
        };

        auto criteria() -> const vector<Criterion> &
        {
            static const vector<Criterion> all{
                {"free-algebra counts 36 and 5879", criterion_1, 10},
                {"subalgebra census of K_n^2", criterion_2, 60},
                {"relation-count formula", criterion_3, 0},
                {"congruence chains and kernels", criterion_4, 0},
                {"homomorphism census", criterion_5, 0},
                {"duality at desk scale", criterion_6, 120},
                {"optimality witnesses", criterion_7, 0},
                {"Priestley reconstruction", criterion_8, 0},
                {"semi-constant dual maps vs complemented images", criterion_9, 0},
                {"product representation", criterion_10, 0},
                {"quasivariety duality", criterion_11, 0},
                {"property suites", criterion_12, 0},
            };
            return all;
        }
    }

    auto criterion_name(int id) -> string
    {
        if (id < 1 || id > criterion_count)
            throw BadIndices("no criterion " + std::to_string(id));
        return criteria()[size_t(id - 1)].name;
    }

    auto run_criterion(int id, const AcceptanceOptions & options) -> CriterionResult
    {
        auto & criterion = criteria().at(size_t(id - 1));
        CriterionResult result;
        result.id = id;
        result.name = criterion.name;
        Check check;
        auto start = std::chrono::steady_clock::now();
        try {
            criterion.run(check, options);
        }
        catch (const std::exception & e) {
            check.expect(false, string("exception: ") + e.what());
        }
        result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (criterion.time_limit > 0) {
            char limit[64];
            std::snprintf(limit, sizeof limit, "runtime below %.0f s", criterion.time_limit);
            check.expect(result.seconds < criterion.time_limit, limit);
        }
        result.passed = ! check.failed();
        result.detail = check.detail();
        return result;
    }

    auto run_acceptance(const AcceptanceOptions & options) -> vector<CriterionResult>
    {
        vector<CriterionResult> results;
        for (int id = 1; id <= criterion_count; ++id)
            results.push_back(run_criterion(id, options));
        return results;
    }

    auto format_result(const CriterionResult & r) -> string
    {
        char head[128];
        std::snprintf(head, sizeof head, "%s  %2d. ", r.passed ? "PASS" : "FAIL", r.id);
        char time[32];
        std::snprintf(time, sizeof time, " (%.2fs): ", r.seconds);
        return head + r.name + time + r.detail;
    }
}
