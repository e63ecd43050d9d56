#include <kndual/acceptance.hh>
#include <kndual/dot.hh>
#include <kndual/duality.hh>
#include <kndual/error.hh>
#include <kndual/json_io.hh>
#include <kndual/kn.hh>
#include <kndual/product_rep.hh>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

using namespace kndual;
using std::size_t;
using std::string;
using std::vector;

namespace
{
    /// Exit status for a failed check.
    constexpr int verification_failed = 1;

    auto print(const Json & j) -> void
    {
        std::cout << j.dump(2) << "\n";
    }

    auto map_json(const SortedMap & f) -> Json
    {
        auto sorts = Json::array();
        for (size_t m = 0; m < f.size(); ++m) {
            auto values = Json::array();
            for (auto v : f[m]) {
                auto e = kn_element(m, v);
                values.push_back(kn_name(e.kind, e.level));
            }
            sorts.push_back(values);
        }
        return sorts;
    }

    auto names_of(const FiniteAlgebra & a, const Subset & s) -> Json
    {
        auto out = Json::array();
        for (auto x = s.find_first(); x != Subset::npos; x = s.find_next(x))
            out.push_back(a.name(Element(x)));
        return out;
    }

    auto parse_drop(const string & text) -> Drop
    {
        auto colon = text.find(':');
        if (colon == string::npos)
            throw BadIndices("--drop expects rel:M or op:M");
        auto kind = text.substr(0, colon);
        auto m = size_t(std::stoul(text.substr(colon + 1)));
        if (kind == "rel")
            return {DropKind::relation, m};
        if (kind == "op")
            return {DropKind::link, m};
        throw BadIndices("--drop expects rel:M or op:M");
    }

    struct Options
    {
        size_t n = 0, m = 0, gens = 1, max_size = 60, max_n = 2;
        std::optional<size_t> max_elements;
        string input, second, exporter, suite = "all";
        vector<string> order;
        bool count_only = false;
        string drop;
        std::uint32_t seed = AcceptanceOptions{}.seed;
    };

    auto limits_of(const Options & o) -> Limits
    {
        auto limits = default_limits();
        if (o.max_elements)
            limits.max_elements = *o.max_elements;
        return limits;
    }

    auto cmd_kn(const Options & o) -> int
    {
        auto k = build_kn(o.n).algebra;
        if (o.exporter != "dot") {
            print(algebra_to_json(k));
            return 0;
        }
        auto which = o.order.empty() ? string("k") : o.order[0];
        auto label = "K" + std::to_string(o.n);
        if (which == "k")
            std::cout << hasse_dot(kn_knowledge_order(o.n), label + "_knowledge");
        else if (which == "t")
            std::cout << hasse_dot(kn_truth_order(o.n), label + "_truth");
        else if (which == "s") {
            if (o.order.size() != 2)
                throw BadIndices("--order s needs the index m");
            auto m = size_t(std::stoul(o.order[1]));
            std::cout << quasi_order_dot(s_nm(o.n, m), "S_" + std::to_string(o.n) + "_" + std::to_string(m));
        }
        else if (which == "both")
            std::cout << bilattice_dot(k, label);
        else
            throw BadIndices("--order expects k, t, both or s M");
        return 0;
    }

    auto cmd_dualize(const Options & o) -> int
    {
        auto a = algebra_from_json(read_json_file(o.input));
        print(space_to_json(dualize(a, o.n).space));
        return 0;
    }

    auto cmd_evaluate(const Options & o) -> int
    {
        auto x = space_from_json(read_json_file(o.input));
        print(algebra_to_json(evaluate(x, limits_of(o)).algebra));
        return 0;
    }

    auto cmd_free(const Options & o) -> int
    {
        if (o.count_only) {
            std::cout << free_algebra_count(o.n, o.gens, limits_of(o)) << "\n";
            return 0;
        }
        print(algebra_to_json(free_algebra(o.n, o.gens, limits_of(o)).algebra));
        return 0;
    }

    auto cmd_subalg(const Options & o) -> int
    {
        auto a = algebra_from_json(read_json_file(o.input));
        auto out = Json::array();
        for (auto & s : all_subalgebras(a))
            out.push_back(names_of(a, s));
        print(out);
        return 0;
    }

    auto cmd_congruences(const Options & o) -> int
    {
        auto a = algebra_from_json(read_json_file(o.input));
        auto out = Json::array();
        for (auto & theta : congruence_lattice(a)) {
            std::vector<Json> blocks;
            std::vector<Element> reps;
            for (Element x = 0; x < a.size(); ++x) {
                size_t b = 0;
                while (b < reps.size() && reps[b] != theta[x])
                    ++b;
                if (b == reps.size()) {
                    reps.push_back(theta[x]);
                    blocks.push_back(Json::array());
                }
                blocks[b].push_back(a.name(x));
            }
            out.push_back(blocks);
        }
        print(out);
        return 0;
    }

    auto cmd_homs(const Options & o) -> int
    {
        auto a = algebra_from_json(read_json_file(o.input));
        auto b = algebra_from_json(read_json_file(o.second));
        auto out = Json::array();
        for (auto & h : homs(a, b)) {
            auto table = Json::object();
            for (Element x = 0; x < a.size(); ++x)
                table[a.name(x)] = b.name(h[x]);
            out.push_back(table);
        }
        print(out);
        return 0;
    }

    auto cmd_product_rep(const Options & o) -> int
    {
        auto a = algebra_from_json(read_json_file(o.input));
        auto r = product_representation(a, o.n, limits_of(o));
        Json j;
        j["sequence"] = sequence_to_json(r.sequence.sequence);
        auto iso = Json::object();
        for (Element x = 0; x < a.size(); ++x)
            iso[a.name(x)] = r.product.algebra.name(r.iso[x]);
        j["iso"] = iso;
        j["product"] = algebra_to_json(r.product.algebra);
        print(j);
        return 0;
    }

    auto cmd_odot(const Options & o) -> int
    {
        auto s = sequence_from_json(read_json_file(o.input));
        auto p = build_product(s, limits_of(o));
        if (o.exporter == "dot")
            std::cout << bilattice_dot(p.algebra, "product");
        else
            print(algebra_to_json(p.algebra));
        return 0;
    }

    auto cmd_reconstruct(const Options & o) -> int
    {
        auto x = space_from_json(read_json_file(o.input));
        auto p = priestley_reconstruction(x);
        if (o.exporter == "dot")
            std::cout << hasse_dot(p, "reconstruction");
        else
            print(poset_to_json(p));
        return 0;
    }

    auto cmd_verify(const Options & o) -> int
    {
        AcceptanceOptions options{o.max_n, o.seed};
        vector<int> ids;
        if (o.suite == "all")
            for (int id = 1; id <= criterion_count; ++id)
                ids.push_back(id);
        else {
            auto id = std::stoi(o.suite);
            criterion_name(id);
            ids.push_back(id);
        }
        bool all = true;
        double total = 0;
        for (auto id : ids) {
            auto r = run_criterion(id, options);
            std::cout << format_result(r) << std::endl;
            all = all && r.passed;
            total += r.seconds;
        }
        std::printf("%s: %zu criteria, %.2fs\n", all ? "ALL PASS" : "FAILURES", ids.size(), total);
        return all ? 0 : verification_failed;
    }

    auto cmd_verify_duality(const Options & o) -> int
    {
        size_t checked = 0, failed = 0;
        for (size_t i = 0; i <= o.n; ++i)
            for (size_t j = i; j <= o.n; ++j) {
                auto p = product({build_kn(i).algebra, build_kn(j).algebra});
                for (auto & u : all_subalgebras(p)) {
                    if (u.count() > o.max_size)
                        continue;
                    auto a = subalgebra(p, u);
                    ++checked;
                    if (! evaluation_map(a, o.n, limits_of(o)).is_isomorphism()) {
                        ++failed;
                        std::cout << "FAIL subalgebra of K_" << i << " x K_" << j << " with " << a.size()
                                  << " elements\n";
                    }
                }
            }
        std::cout << (failed ? "FAIL" : "PASS") << ": " << checked - failed << " of " << checked
                  << " evaluation maps are isomorphisms at n = " << o.n << "\n";
        return failed ? verification_failed : 0;
    }

    auto cmd_optimality(const Options & o) -> int
    {
        auto drop = parse_drop(o.drop);
        auto w = optimality_witness(o.n, drop);
        Json j;
        j["test_algebra_size"] = w.test_algebra.size();
        j["non_evaluations"] = w.non_evaluations.size();
        j["construction_found"] = w.construction_found;
        j["construction"] = map_json(w.construction);
        print(j);
        return w.construction_found ? 0 : verification_failed;
    }

    auto cmd_verify_prodrep(const Options & o) -> int
    {
        auto s = all_two_sequence(o.n);
        auto p = build_product(s, limits_of(o));
        auto report = transport_check(p, limits_of(o));
        bool size = p.universe.size() == 3 * o.n + 4;
        bool lex = truth_order_lex_check(o.n);
        auto kn = build_kn(o.n).algebra;
        auto r = product_representation(kn, o.n, limits_of(o));
        bool phi_ok = true;
        for (Element x = 0; x < kn.size(); ++x)
            phi_ok = phi_ok && phi(o.n, r.product.universe[r.iso[x]]) == x;
        auto line = [](bool ok, const string & what) { std::cout << (ok ? "PASS  " : "FAIL  ") << what << "\n"; };
        line(size, "|A| = " + std::to_string(p.universe.size()));
        line(report.ok(), "coordinate tables match the transport through iota (" + std::to_string(report.comparisons)
                + " comparisons)" + (report.ok() ? "" : ": " + report.first_mismatch));
        line(lex, "truth order is lexicographic");
        line(phi_ok, "product representation of K_" + std::to_string(o.n) + " is inverse to phi");
        return size && report.ok() && lex && phi_ok ? 0 : verification_failed;
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"Default bilattices K_n: construction, natural duality and product representation"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--max-elements", o.max_elements, "Size guard for enumerated universes");

    auto add_n = [&](CLI::App * c, bool required) {
        auto opt = c->add_option("--n", o.n, "Index n of K_n");
        if (required)
            opt->required();
    };
    auto add_input = [&](CLI::App * c, const char * what) { c->add_option("input", o.input, what)->required(); };

    auto kn = app.add_subcommand("kn", "Export K_n as algebra JSON or as DOT diagrams");
    add_n(kn, true);
    kn->add_option("--export", o.exporter, "json (default) or dot")->check(CLI::IsMember({"json", "dot"}));
    kn->add_option("--order", o.order, "k, t, both, or s M for S_{n,M}")->expected(1, 2);

    auto dualize_cmd = app.add_subcommand("dualize", "Dual multisorted space of an algebra");
    add_input(dualize_cmd, "Algebra JSON file");
    add_n(dualize_cmd, true);

    auto evaluate_cmd = app.add_subcommand("evaluate", "Algebra of morphisms out of a multisorted space");
    add_input(evaluate_cmd, "Multisorted space JSON file");

    auto free = app.add_subcommand("free", "Free algebra in V_n");
    add_n(free, true);
    free->add_option("--gens", o.gens, "Number of generators")->required();
    free->add_flag("--count-only", o.count_only, "Print only the number of elements");

    auto subalg = app.add_subcommand("subalg", "All subalgebras of an algebra");
    add_input(subalg, "Algebra JSON file");

    auto congruences = app.add_subcommand("congruences", "Congruence lattice of an algebra");
    add_input(congruences, "Algebra JSON file");

    auto homs_cmd = app.add_subcommand("homs", "Homomorphisms between two algebras");
    add_input(homs_cmd, "Domain algebra JSON file");
    homs_cmd->add_option("codomain", o.second, "Codomain algebra JSON file")->required();

    auto product_rep = app.add_subcommand("product-rep", "Product representation of an algebra in V_n");
    add_input(product_rep, "Algebra JSON file");
    add_n(product_rep, true);

    auto odot = app.add_subcommand("odot", "Bilattice of a default sequence");
    add_input(odot, "Default sequence JSON file");
    odot->add_option("--export", o.exporter, "json (default) or dot")->check(CLI::IsMember({"json", "dot"}));

    auto reconstruct = app.add_subcommand("reconstruct", "Ordered set whose up-sets give the knowledge reduct");
    add_input(reconstruct, "Multisorted space JSON file");
    reconstruct->add_option("--export", o.exporter, "json (default) or dot")->check(CLI::IsMember({"json", "dot"}));

    auto verify = app.add_subcommand("verify", "Run the acceptance criteria");
    verify->add_option("--suite", o.suite, "all or a criterion number 1-12");
    verify->add_option("--max-n", o.max_n, "Extend the scalable n-ranges up to this value");
    verify->add_option("--seed", o.seed, "Seed for random samples");

    auto verify_duality = app.add_subcommand("verify-duality", "Evaluation maps on subalgebras of K_i x K_j, i, j <= n");
    add_n(verify_duality, true);
    verify_duality->add_option("--max-size", o.max_size, "Skip subalgebras larger than this");

    auto optimality = app.add_subcommand("optimality", "Non-evaluation map after dropping part of the alter ego");
    add_n(optimality, true);
    optimality->add_option("--drop", o.drop, "rel:M drops S_{M,M}, op:M drops h_{M,M-1}")->required();

    auto verify_prodrep = app.add_subcommand("verify-prodrep", "Check the product representation of K_n");
    add_n(verify_prodrep, true);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto status = app.exit(e);
        return status == 0 ? 0 : 2;
    }

    try {
        auto * sub = app.get_subcommands().front();
        auto name = sub->get_name();
        if (name == "kn")
            return cmd_kn(o);
        if (name == "dualize")
            return cmd_dualize(o);
        if (name == "evaluate")
            return cmd_evaluate(o);
        if (name == "free")
            return cmd_free(o);
        if (name == "subalg")
            return cmd_subalg(o);
        if (name == "congruences")
            return cmd_congruences(o);
        if (name == "homs")
            return cmd_homs(o);
        if (name == "product-rep")
            return cmd_product_rep(o);
        if (name == "odot")
            return cmd_odot(o);
        if (name == "reconstruct")
            return cmd_reconstruct(o);
        if (name == "verify")
            return cmd_verify(o);
        if (name == "verify-duality")
            return cmd_verify_duality(o);
        if (name == "optimality")
            return cmd_optimality(o);
        if (name == "verify-prodrep")
            return cmd_verify_prodrep(o);
    }
    catch (const SizeOverflow & e) {
        std::cerr << e.what() << "\n";
        return 3;
    }
    catch (const ParseError & e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    catch (const BadIndices & e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    catch (const std::invalid_argument & e) {
        std::cerr << "invalid number: " << e.what() << "\n";
        return 2;
    }
    catch (const Error & e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 2;
}
