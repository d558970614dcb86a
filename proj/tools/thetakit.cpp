#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "thetakit/thetakit.hpp"

using namespace thetakit;

namespace {

enum Exit { ok = 0, check_failed = 1, input_error = 2, window_exhausted = 3 };

int hom_cmd(int level, const std::string& src, const std::string& dst, bool list)
{
    const ThetaObject a = ThetaObject::parse(src, level);
    const ThetaObject b = ThetaObject::parse(dst, level);
    if (!list) {
        std::cout << count_hom(a, b) << "\n";
        return ok;
    }
    for (const auto& f : enumerate_hom(a, b))
        std::cout << f.to_string() << "\n";
    return ok;
}

int objects_cmd(int level, int max_size)
{
    for (const auto& o : enumerate_objects(level, max_size))
        std::cout << o.str() << "\n";
    return ok;
}

int check_cmd(const std::string& kind, const std::string& input, std::optional<int> k)
{
    const FinPresheaf x = read_presheaf(input);
    if (kind == "segal") {
        const auto rep = check_segal_discrete(x);
        std::cout << rep.text();
        return rep.passes() ? ok : check_failed;
    }
    if (kind == "complete") {
        const auto rep = check_complete_discrete(x);
        std::cout << rep.text();
        return rep.complete() ? ok : check_failed;
    }
    if (kind == "groupoid") {
        const auto rep = check_groupoid_discrete(x);
        std::cout << rep.text();
        return rep.passes() ? ok : check_failed;
    }
    if (!k)
        throw InputError("check truncation needs --k");
    const auto rep = check_truncation_discrete(x, *k);
    std::cout << rep.text();
    return rep.passes ? ok : check_failed;
}

int dnerve_cmd(const std::string& input, int window)
{
    const StrictNCat c = read_ncat(input);
    std::cout << write_presheaf(dnerve(c, Window::get(c.dimension(), window)));
    return ok;
}

int qposet_cmd(int m, int n, bool homology, bool retractions)
{
    const QPoset q = enumerate_Q(m, n);
    std::cout << "Q_{" << m << "," << n << "}: " << q.elements.size() << " paths\n";
    for (const auto& p : q.elements)
        std::cout << "  " << (p.steps().empty() ? "(empty)" : p.steps()) << "\n";
    int status = ok;
    if (homology) {
        const auto h = reduced_homology(q.order);
        std::cout << "reduced homology:\n" << h.text();
        std::cout << (h.vanishes() ? "reduced homology all zero\n" : "reduced homology nonzero\n");
        if (!h.vanishes())
            status = check_failed;
    }
    if (retractions) {
        if (n < 1)
            throw InputError("retractions need n >= 1");
        const auto chain = retraction_chain(q);
        for (const auto& step : chain) {
            const auto cert = certify_step(q, step);
            std::cout << step.name << " (" << to_string(step.direction) << "): " << step.domain.size() << " -> "
                      << step.codomain.size() << " " << (cert.ok() ? "ok" : "FAIL");
            if (!cert.ok())
                std::cout << " [" << cert.witness << "]";
            std::cout << "\n";
            if (!cert.ok())
                status = check_failed;
        }
        const bool lower = isomorphic_to_lower_row(q, chain.back().codomain);
        std::cout << "final subposet isomorphic to Q_{" << m << "," << n - 1 << "}: " << (lower ? "yes" : "no")
                  << "\n";
        if (!lower)
            status = check_failed;
    }
    return status;
}

std::string slug(std::string s)
{
    for (auto& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)))
            c = '-';
    return s;
}

int verify_cmd(const std::string& suite, const std::string& manifest, bool json, bool timing,
               const std::string& dump_dir, unsigned jobs)
{
    const SuiteConfig cfg = manifest.empty() ? SuiteConfig{} : manifest_from_json(read_document(manifest));
    const auto results = run_criteria(criteria_of_suite(suite), cfg, jobs);
    bool all = true;
    for (const auto& r : results)
        all = all && r.ok();
    if (json) {
        Json doc;
        doc["format"] = "thetakit.report";
        doc["suite"] = suite;
        doc["passed"] = all;
        Json rs = Json::array();
        for (const auto& r : results)
            rs.push_back(r.to_json());
        doc["criteria"] = rs;
        std::cout << dump_document(doc);
    } else {
        for (const auto& r : results) {
            std::cout << result_line(r);
            if (timing)
                std::cout << " " << static_cast<long long>(r.wall_ms) << " ms";
            std::cout << "\n";
            for (const auto& f : r.failures)
                std::cout << "  " << f.name << ": " << f.witness << "\n";
        }
    }
    if (!dump_dir.empty()) {
        std::filesystem::create_directories(dump_dir);
        for (const auto& r : results)
            for (std::size_t i = 0; i < r.failures.size(); ++i) {
                const auto& f = r.failures[i];
                if (f.input.is_null())
                    continue;
                const auto path = std::filesystem::path(dump_dir) /
                                  ("criterion" + std::to_string(r.id) + "-" + std::to_string(i) + "-" +
                                   slug(f.name) + ".json");
                std::ofstream(path) << dump_document(f.input);
            }
    }
    return all ? ok : check_failed;
}

int export_cmd(const std::string& format, const std::string& presheaf, const std::string& ncat, int level, int window,
               int corpus_random, std::uint32_t corpus_seed)
{
    if (format != "json")
        throw InputError("unsupported export format " + format);
    if (!presheaf.empty()) {
        std::cout << write_presheaf(named_presheaf(presheaf, Window::get(level, window)));
        return ok;
    }
    if (!ncat.empty()) {
        std::cout << write_ncat(corpus_category(ncat));
        return ok;
    }
    Json doc;
    doc["format"] = "thetakit.corpus";
    doc["random_count"] = corpus_random;
    doc["seed"] = corpus_seed;
    Json cats = Json::array();
    for (const auto& nc : build_corpus(corpus_random, corpus_seed))
        cats.push_back(Json{{"name", nc.name}, {"ncat", ncat_to_json(nc.cat)}});
    doc["categories"] = cats;
    std::cout << dump_document(doc);
    return ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Finite combinatorics of Theta_n: enumeration, verification suites and data export"};
    app.require_subcommand(1);

    int level = 2;
    std::string src, dst;
    bool list = false;
    auto* hom = app.add_subcommand("hom", "count or list morphisms between two objects");
    hom->add_option("--level", level, "tree height n")->required();
    hom->add_option("--src", src)->required();
    hom->add_option("--dst", dst)->required();
    auto* count_flag = hom->add_flag("--count", "print the number of morphisms (default)");
    hom->add_flag("--list", list, "print every morphism")->excludes(count_flag);

    int max_size = 3;
    auto* objects = app.add_subcommand("objects", "list objects in canonical order");
    objects->add_option("--level", level)->required();
    objects->add_option("--max-size", max_size)->required();

    std::string kind, input;
    std::optional<int> k;
    auto* check = app.add_subcommand("check", "run a discrete fibrancy check on a presheaf file");
    check->add_option("kind", kind)->required()->check(CLI::IsMember({"segal", "complete", "groupoid", "truncation"}));
    check->add_option("--input", input)->required();
    check->add_option("--k", k, "truncation level");

    int window = 3;
    auto* dn = app.add_subcommand("dnerve", "discrete nerve of a strict n-category file");
    dn->add_option("--input", input)->required();
    dn->add_option("--window", window, "maximum object size")->required();

    int m = 1, n = 1;
    bool homology = false, retractions = false;
    auto* qposet = app.add_subcommand("qposet", "lattice path poset Q_{m,n}");
    qposet->add_option("--m", m)->required()->check(CLI::Range(0, 8));
    qposet->add_option("--n", n)->required()->check(CLI::Range(0, 8));
    qposet->add_flag("--homology", homology);
    qposet->add_flag("--retractions", retractions);

    std::string suite, manifest, dump_dir;
    bool json = false, timing = false;
    unsigned jobs = 0;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite)
        ->required()
        ->check(CLI::IsMember({"axioms", "decompositions", "covers", "qpaths", "rigidity", "all"}));
    verify->add_option("--manifest", manifest, "suite configuration file");
    verify->add_flag("--json", json);
    verify->add_flag("--timing", timing, "append wall time to each line");
    verify->add_option("--dump-failures", dump_dir, "write failing inputs to this directory");
    verify->add_option("--jobs", jobs, "worker threads (0 = hardware)");

    std::string format = "json", presheaf, ncat;
    int corpus_random = 10;
    std::uint32_t corpus_seed = 17;
    auto* exp = app.add_subcommand("export", "export presheaves, categories or the corpus");
    exp->add_option("--format", format)->required();
    auto* pre_opt = exp->add_option("--presheaf", presheaf, "named presheaf, e.g. spine:2 or dnerve:NAME");
    exp->add_option("--ncat", ncat, "corpus category name")->excludes(pre_opt);
    exp->add_option("--level", level);
    exp->add_option("--window", window);
    exp->add_option("--random", corpus_random);
    exp->add_option("--seed", corpus_seed);

    auto* man = app.add_subcommand("manifest", "print the default suite manifest");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? ok : input_error;
    }

    try {
        if (*hom)
            return hom_cmd(level, src, dst, list);
        if (*objects)
            return objects_cmd(level, max_size);
        if (*check)
            return check_cmd(kind, input, k);
        if (*dn)
            return dnerve_cmd(input, window);
        if (*qposet)
            return qposet_cmd(m, n, homology, retractions);
        if (*verify)
            return verify_cmd(suite, manifest, json, timing, dump_dir, jobs);
        if (*exp)
            return export_cmd(format, presheaf, ncat, level, window, corpus_random, corpus_seed);
        if (*man) {
            std::cout << write_manifest(SuiteConfig{});
            return ok;
        }
    } catch (const WindowExhausted& e) {
        std::cerr << "window exhausted: " << e.what() << "\n";
        return window_exhausted;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return input_error;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const ArgumentError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return input_error;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return check_failed;
    }
    return input_error;
}
