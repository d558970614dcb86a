#ifndef THETAKIT_IO_HPP
#define THETAKIT_IO_HPP

// JSON documents for presheaves, strict n-categories and suite manifests.
// Writers use canonical ordering and a fixed layout, so reading a written
// document and writing it again reproduces it byte for byte.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "errors.hpp"
#include "ncat.hpp"
#include "presheaf.hpp"
#include "window.hpp"

namespace thetakit {

using Json = nlohmann::ordered_json;

class InputError : public Error {
public:
    using Error::Error;
};

/// One key per line at the top level, and one line per element of any
/// top-level array.
inline std::string dump_document(const Json& doc)
{
    std::string out = "{\n";
    std::size_t i = 0;
    for (auto it = doc.begin(); it != doc.end(); ++it, ++i) {
        out += "  " + Json(it.key()).dump() + ": ";
        if (it.value().is_array() && !it.value().empty()) {
            out += "[\n";
            for (std::size_t j = 0; j < it.value().size(); ++j)
                out += "    " + it.value()[j].dump() + (j + 1 < it.value().size() ? ",\n" : "\n");
            out += "  ]";
        } else {
            out += it.value().dump();
        }
        out += i + 1 < doc.size() ? ",\n" : "\n";
    }
    return out + "}\n";
}

inline Json parse_document(const std::string& text)
{
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

inline Json read_document(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_document(ss.str());
}

namespace detail {

inline const Json& field(const Json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key))
        throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* key)
{
    try {
        return field(j, key).get<T>();
    } catch (const Json::exception&) {
        throw InputError(std::string("field \"") + key + "\" has the wrong type");
    }
}

inline void expect_format(const Json& doc, const std::string& format)
{
    if (get_as<std::string>(doc, "format") != format)
        throw InputError("expected a " + format + " document");
}

} // namespace detail

inline Json presheaf_to_json(const FinPresheaf& x)
{
    const Window& w = x.window();
    Json doc;
    doc["format"] = "thetakit.presheaf";
    doc["level"] = w.level();
    doc["max_size"] = w.bound();
    doc["presented"] = x.presented();
    Json objects = Json::array();
    for (int a = 0; a < w.object_count(); ++a) {
        Json labels = Json::array();
        for (int e = 0; e < x.size(a); ++e)
            labels.push_back(x.label(a, e));
        objects.push_back(Json{{"object", w.object(a).str()}, {"elements", labels}});
    }
    doc["objects"] = objects;
    Json actions = Json::array();
    for (int f = 0; f < w.morphism_count(); ++f) {
        Json map = Json::array();
        for (int e = 0; e < x.size(w.dst(f)); ++e)
            map.push_back(x.label(w.src(f), x.apply(f, e)));
        actions.push_back(Json{{"id", f}, {"src", w.object(w.src(f)).str()}, {"dst", w.object(w.dst(f)).str()},
                               {"map", map}});
    }
    doc["actions"] = actions;
    return doc;
}

inline std::string write_presheaf(const FinPresheaf& x) { return dump_document(presheaf_to_json(x)); }

inline FinPresheaf presheaf_from_json(const Json& doc)
{
    detail::expect_format(doc, "thetakit.presheaf");
    const int level = detail::get_as<int>(doc, "level");
    const int bound = detail::get_as<int>(doc, "max_size");
    if (level < 0 || bound < 0)
        throw InputError("level and max_size must be non-negative");
    Window::Ptr w = Window::get(level, bound);
    const int n = w->object_count();
    std::vector<std::vector<std::string>> labels(n);
    std::vector<std::map<std::string, int>> index(n);
    std::vector<bool> seen(n, false);
    for (const auto& entry : detail::field(doc, "objects")) {
        const auto text = detail::get_as<std::string>(entry, "object");
        const int a = w->index_of(ThetaObject::parse(text, level));
        if (a < 0)
            throw WindowExhausted("object outside the window", text);
        if (seen[a])
            throw InputError("object " + text + " listed twice");
        seen[a] = true;
        labels[a] = detail::get_as<std::vector<std::string>>(entry, "elements");
        for (std::size_t e = 0; e < labels[a].size(); ++e)
            if (!index[a].emplace(labels[a][e], static_cast<int>(e)).second)
                throw InputError("duplicate element " + labels[a][e] + " at " + text);
    }
    for (int a = 0; a < n; ++a)
        if (!seen[a])
            throw InputError("no elements given for " + w->object(a).str());
    std::vector<int> sizes(n);
    for (int a = 0; a < n; ++a)
        sizes[a] = static_cast<int>(labels[a].size());
    std::vector<std::vector<int>> acts(w->morphism_count());
    std::vector<bool> given(w->morphism_count(), false);
    for (const auto& entry : detail::field(doc, "actions")) {
        const int f = detail::get_as<int>(entry, "id");
        if (f < 0 || f >= w->morphism_count())
            throw InputError("morphism id " + std::to_string(f) + " out of range");
        if (given[f])
            throw InputError("morphism " + std::to_string(f) + " listed twice");
        given[f] = true;
        if (detail::get_as<std::string>(entry, "src") != w->object(w->src(f)).str() ||
            detail::get_as<std::string>(entry, "dst") != w->object(w->dst(f)).str())
            throw InputError("morphism " + std::to_string(f) + " has the wrong endpoints");
        const auto map = detail::get_as<std::vector<std::string>>(entry, "map");
        if (static_cast<int>(map.size()) != sizes[w->dst(f)])
            throw InputError("action of morphism " + std::to_string(f) + " has the wrong length");
        for (const auto& l : map) {
            auto it = index[w->src(f)].find(l);
            if (it == index[w->src(f)].end())
                throw InputError("unknown element " + l + " in the action of morphism " + std::to_string(f));
            acts[f].push_back(it->second);
        }
    }
    for (int f = 0; f < w->morphism_count(); ++f)
        if (!given[f])
            throw InputError("no action given for morphism " + std::to_string(f));
    const bool presented = doc.contains("presented") && doc.at("presented").is_boolean() && doc.at("presented").get<bool>();
    FinPresheaf x(w, std::move(sizes), std::move(acts), presented);
    if (auto bad = check_functoriality(x))
        throw InputError("not a presheaf: " + *bad);
    x.set_labels(std::move(labels));
    return x;
}

inline FinPresheaf read_presheaf(const std::string& path) { return presheaf_from_json(read_document(path)); }

inline Json ncat_to_json(const StrictNCat& c)
{
    const int n = c.dimension();
    Json doc;
    doc["format"] = "thetakit.ncat";
    doc["dimension"] = n;
    Json cells = Json::array();
    for (int d = 0; d <= n; ++d) {
        Json e{{"dimension", d}, {"count", c.count(d)}};
        if (d > 0) {
            e["source"] = c.sources()[d];
            e["target"] = c.targets()[d];
        }
        if (d < n)
            e["identity"] = c.identities()[d];
        cells.push_back(e);
    }
    doc["cells"] = cells;
    Json comps = Json::array();
    for (int d = 1; d <= n; ++d)
        for (int j = 0; j < d; ++j) {
            Json rows = Json::array();
            const auto& table = c.compositions()[d][j];
            for (int a = 0; a < c.count(d); ++a)
                rows.push_back(std::vector<int>(table.begin() + static_cast<std::ptrdiff_t>(a) * c.count(d),
                                                table.begin() + static_cast<std::ptrdiff_t>(a + 1) * c.count(d)));
            comps.push_back(Json{{"dimension", d}, {"along", j}, {"table", rows}});
        }
    doc["compositions"] = comps;
    return doc;
}

inline std::string write_ncat(const StrictNCat& c) { return dump_document(ncat_to_json(c)); }

inline StrictNCat ncat_from_json(const Json& doc)
{
    detail::expect_format(doc, "thetakit.ncat");
    const int n = detail::get_as<int>(doc, "dimension");
    if (n < 0)
        throw InputError("negative dimension");
    const auto& cells = detail::field(doc, "cells");
    if (!cells.is_array() || static_cast<int>(cells.size()) != n + 1)
        throw InputError("expected " + std::to_string(n + 1) + " cell entries");
    std::vector<int> counts(n + 1);
    std::vector<std::vector<int>> src(n + 1), tgt(n + 1), id(n + 1);
    for (int d = 0; d <= n; ++d) {
        const auto& e = cells[d];
        if (detail::get_as<int>(e, "dimension") != d)
            throw InputError("cell entries must be listed by dimension");
        counts[d] = detail::get_as<int>(e, "count");
        if (counts[d] < 0)
            throw InputError("negative cell count");
        if (d > 0) {
            src[d] = detail::get_as<std::vector<int>>(e, "source");
            tgt[d] = detail::get_as<std::vector<int>>(e, "target");
            if (static_cast<int>(src[d].size()) != counts[d] || static_cast<int>(tgt[d].size()) != counts[d])
                throw InputError("dimension " + std::to_string(d) + ": source/target length mismatch");
        }
        if (d < n) {
            id[d] = detail::get_as<std::vector<int>>(e, "identity");
            if (static_cast<int>(id[d].size()) != counts[d])
                throw InputError("dimension " + std::to_string(d) + ": identity length mismatch");
        }
    }
    for (int d = 1; d <= n; ++d)
        for (std::size_t x = 0; x < src[d].size(); ++x)
            if (src[d][x] < 0 || src[d][x] >= counts[d - 1] || tgt[d][x] < 0 || tgt[d][x] >= counts[d - 1])
                throw InputError("dimension " + std::to_string(d) + ": boundary index out of range");
    for (int d = 0; d < n; ++d)
        for (int x : id[d])
            if (x < 0 || x >= counts[d + 1])
                throw InputError("dimension " + std::to_string(d) + ": identity index out of range");
    std::vector<std::vector<std::vector<int>>> comp(n + 1);
    std::vector<std::vector<bool>> have(n + 1);
    for (int d = 0; d <= n; ++d) {
        comp[d].resize(d);
        have[d].assign(d, false);
    }
    for (const auto& e : detail::field(doc, "compositions")) {
        const int d = detail::get_as<int>(e, "dimension");
        const int j = detail::get_as<int>(e, "along");
        if (d < 1 || d > n || j < 0 || j >= d)
            throw InputError("composition entry out of range");
        if (have[d][j])
            throw InputError("composition table listed twice");
        have[d][j] = true;
        const auto rows = detail::get_as<std::vector<std::vector<int>>>(e, "table");
        if (static_cast<int>(rows.size()) != counts[d])
            throw InputError("composition table has the wrong number of rows");
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != counts[d])
                throw InputError("composition table has the wrong number of columns");
            for (int v : r)
                if (v < -1 || v >= counts[d])
                    throw InputError("composite index out of range");
            comp[d][j].insert(comp[d][j].end(), r.begin(), r.end());
        }
    }
    for (int d = 1; d <= n; ++d)
        for (int j = 0; j < d; ++j)
            if (!have[d][j])
                throw InputError("missing composition table for dimension " + std::to_string(d) + " along " +
                                 std::to_string(j));
    StrictNCat c = StrictNCat::from_tables(n, counts, src, tgt, id, comp);
    if (auto bad = c.check_axioms())
        throw InputError("not a strict " + std::to_string(n) + "-category: " + *bad);
    return c;
}

inline StrictNCat read_ncat(const std::string& path) { return ncat_from_json(read_document(path)); }

} // namespace thetakit

#endif // THETAKIT_IO_HPP
