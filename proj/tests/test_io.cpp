#include <gtest/gtest.h>

#include "thetakit/corpus.hpp"
#include "thetakit/io.hpp"
#include "thetakit/suites.hpp"

using namespace thetakit;

TEST(IO, PresheafRoundTripIsByteStable)
{
    for (auto [level, bound] : {std::pair{1, 3}, std::pair{2, 3}}) {
        auto w = Window::get(level, bound);
        for (const auto& x : {terminal_presheaf(w), yoneda(w, w->objects().back()), cell(w, 1),
                              coproduct(constant_presheaf(w, 2), yoneda(w, w->objects()[1]))}) {
            const std::string text = write_presheaf(x);
            const FinPresheaf back = presheaf_from_json(parse_document(text));
            EXPECT_EQ(back.sizes(), x.sizes());
            EXPECT_EQ(back.actions(), x.actions());
            EXPECT_EQ(write_presheaf(back), text);
        }
    }
}

TEST(IO, LabelsSurvive)
{
    auto w = Window::get(1, 2);
    FinPresheaf x = constant_presheaf(w, 2);
    std::vector<std::vector<std::string>> labels(w->object_count(), {"x", "y"});
    x.set_labels(labels);
    const auto back = presheaf_from_json(presheaf_to_json(x));
    EXPECT_EQ(back.label(0, 1), "y");
    EXPECT_EQ(write_presheaf(back), write_presheaf(x));
}

TEST(IO, PresheafErrors)
{
    auto w = Window::get(1, 2);
    Json doc = presheaf_to_json(terminal_presheaf(w));
    Json wrong = doc;
    wrong["format"] = "thetakit.ncat";
    EXPECT_THROW(presheaf_from_json(wrong), InputError);
    Json missing = doc;
    missing["actions"].erase(0);
    EXPECT_THROW(presheaf_from_json(missing), InputError);
    Json bad_label = doc;
    bad_label["actions"][1]["map"][0] = "nope";
    EXPECT_THROW(presheaf_from_json(bad_label), InputError);
    Json outside = doc;
    outside["objects"][0]["object"] = "[7]";
    EXPECT_THROW(presheaf_from_json(outside), WindowExhausted);
    Json garbled = doc;
    garbled["objects"][0]["object"] = "[1";
    EXPECT_THROW(presheaf_from_json(garbled), ParseError);
    EXPECT_THROW(parse_document("{"), InputError);
}

TEST(IO, NonFunctorialActionRejected)
{
    auto w = Window::get(1, 1);
    Json doc = presheaf_to_json(yoneda(w, ThetaObject::simplex(1, 1)));
    bool changed = false;
    for (auto& a : doc["actions"])
        if (a["src"] == "[1](.)" && a["dst"] == "[1](.)" && a["map"] == Json{"0", "1", "2"}) {
            a["map"] = Json{"2", "1", "0"};
            changed = true;
            break;
        }
    ASSERT_TRUE(changed);
    EXPECT_THROW(presheaf_from_json(doc), InputError);
}

TEST(IO, NCatRoundTrip)
{
    for (const auto& nc : build_corpus(3)) {
        const std::string text = write_ncat(nc.cat);
        const StrictNCat back = ncat_from_json(parse_document(text));
        EXPECT_EQ(write_ncat(back), text) << nc.name;
        EXPECT_EQ(back.total_cells(), nc.cat.total_cells());
    }
}

TEST(IO, NCatErrors)
{
    Json doc = ncat_to_json(chaotic_groupoid(2));
    Json bad = doc;
    bad["compositions"][0]["table"][0][0] = 3; // composite with the wrong boundary
    EXPECT_THROW(ncat_from_json(bad), InputError);
    Json short_cells = doc;
    short_cells["cells"].erase(1);
    EXPECT_THROW(ncat_from_json(short_cells), InputError);
}

TEST(IO, NamedPresheaves)
{
    auto w = Window::get(1, 3);
    EXPECT_EQ(named_presheaf("spine:2", w).at(ThetaObject::simplex(1, 2)), 7);
    EXPECT_EQ(named_presheaf("full:2", w).at(ThetaObject::simplex(1, 2)), 10);
    EXPECT_EQ(named_presheaf("constant:3", w).size(0), 3);
    EXPECT_EQ(named_presheaf("representable:[1]", w).at(ThetaObject::simplex(1, 0)), 2);
    EXPECT_EQ(named_presheaf("dnerve:chain 1", w).at(ThetaObject::simplex(1, 1)), 3);
    EXPECT_THROW(named_presheaf("spine:x", w), ArgumentError);
    EXPECT_THROW(named_presheaf("nothing", w), ArgumentError);
}

TEST(Manifest, RoundTrip)
{
    SuiteConfig cfg;
    const std::string text = write_manifest(cfg);
    const SuiteConfig back = manifest_from_json(parse_document(text));
    EXPECT_EQ(write_manifest(back), text);
    Json doc = manifest_to_json(cfg);
    doc["criteria"][2]["seed"] = 999;
    doc["corpus"]["seed"] = 5;
    const SuiteConfig changed = manifest_from_json(doc);
    EXPECT_EQ(changed.seeds.at(3), 999u);
    EXPECT_EQ(changed.corpus_seed, 5u);
    doc["criteria"][0]["criterion"] = 99;
    EXPECT_THROW(manifest_from_json(doc), InputError);
}

TEST(Suites, ResultsComeBackInOrder)
{
    const auto rs = run_criteria({10, 4}, SuiteConfig{}, 2);
    ASSERT_EQ(rs.size(), 2u);
    EXPECT_EQ(rs[0].id, 4);
    EXPECT_EQ(rs[1].id, 10);
    EXPECT_TRUE(rs[0].ok());
    EXPECT_TRUE(rs[1].ok());
    EXPECT_THROW(run_criteria({42}, SuiteConfig{}), ArgumentError);
    EXPECT_THROW(criteria_of_suite("nope"), ArgumentError);
}

TEST(Suites, FailuresCarryReplayableInputs)
{
    const auto r = run_criteria({12}, SuiteConfig{})[0];
    ASSERT_EQ(r.failures.size(), 1u);
    const auto& f = r.failures[0];
    EXPECT_EQ(f.witness, "observed 7 vs 8");
    const FinPresheaf x = presheaf_from_json(f.input);
    EXPECT_FALSE(check_segal_discrete(x).passes());
}
