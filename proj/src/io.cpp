#include "ocspath/io.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

namespace ocspath {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& what) { throw io_error(what); }

[[noreturn]] void fail_at(std::size_t index, const std::string& what) {
    fail("transition " + std::to_string(index) + ": " + what);
}

const json& field(const json& obj, const char* key, const char* where) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(std::string(where) + ": missing field \"" + key + "\"");
    return *it;
}

std::string parse_kind(const json& doc) {
    const json& kind = field(doc, "kind", "document");
    if (!kind.is_string()) fail("kind must be a string");
    std::string k = kind.get<std::string>();
    if (k != "ocs" && k != "oca" && k != "zocs") fail("unknown kind \"" + k + "\"");
    return k;
}

std::vector<std::string> parse_names(const json& doc, const char* key,
                                     bool allow_empty = false) {
    const json& arr = field(doc, key, "document");
    if (!arr.is_array()) fail(std::string(key) + " must be an array of strings");
    std::vector<std::string> names;
    std::set<std::string> seen;
    for (const json& v : arr) {
        if (!v.is_string() || v.get<std::string>().empty())
            fail(std::string(key) + " must contain nonempty strings");
        std::string s = v.get<std::string>();
        if (!seen.insert(s).second) fail("duplicate name \"" + s + "\" in " + key);
        names.push_back(std::move(s));
    }
    if (names.empty() && !allow_empty) fail(std::string(key) + " must not be empty");
    return names;
}

State lookup(const std::unordered_map<std::string, State>& index, const json& v,
             std::size_t ti, const char* key) {
    if (!v.is_string()) fail_at(ti, std::string(key) + " must be a state name");
    auto it = index.find(v.get<std::string>());
    if (it == index.end())
        fail_at(ti, "unknown " + std::string(key) + " \"" + v.get<std::string>() + "\"");
    return it->second;
}

std::int32_t parse_eff(const json& v, std::size_t ti) {
    if (!v.is_number_integer()) fail_at(ti, "eff must be an integer");
    std::int64_t e = v.get<std::int64_t>();
    if (e < -1 || e > 1) fail_at(ti, "eff must be -1, 0 or 1");
    return static_cast<std::int32_t>(e);
}

Guard parse_guard(const json& v, std::size_t ti, const std::string& kind) {
    if (!v.is_string()) fail_at(ti, "guard must be a string");
    std::string g = v.get<std::string>();
    if (g == "pos") return Guard::pos;
    if (g == "zero") return Guard::zero;
    if (g == "neg") {
        if (kind != "zocs") fail_at(ti, "guard \"neg\" requires kind \"zocs\"");
        return Guard::neg;
    }
    fail_at(ti, "unknown guard \"" + g + "\"");
}

std::vector<State> parse_state_set(const json& doc, const char* key,
                                   const std::unordered_map<std::string, State>& index) {
    const json& arr = field(doc, key, "document");
    if (!arr.is_array()) fail(std::string(key) + " must be an array of state names");
    std::vector<State> states;
    for (const json& v : arr) {
        if (!v.is_string()) fail(std::string(key) + " must contain state names");
        auto it = index.find(v.get<std::string>());
        if (it == index.end())
            fail("unknown state \"" + v.get<std::string>() + "\" in " + key);
        states.push_back(it->second);
    }
    std::sort(states.begin(), states.end());
    if (std::adjacent_find(states.begin(), states.end()) != states.end())
        fail("duplicate state in " + std::string(key));
    return states;
}

SystemDocument parse_document(const json& doc) {
    if (!doc.is_object()) fail("document must be a JSON object");
    std::string kind = parse_kind(doc);
    std::vector<std::string> names = parse_names(doc, "states");
    const int n = static_cast<int>(names.size());
    std::unordered_map<std::string, State> index;
    for (State q = 0; q < n; ++q) index.emplace(names[q], q);

    const json& trans = field(doc, "transitions", "document");
    if (!trans.is_array()) fail("transitions must be an array");

    std::vector<std::string> alphabet;
    std::unordered_map<std::string, std::int32_t> letter_index;
    if (kind == "oca") {
        alphabet = parse_names(doc, "alphabet", /*allow_empty=*/true);
        for (std::size_t i = 0; i < alphabet.size(); ++i)
            letter_index.emplace(alphabet[i], static_cast<std::int32_t>(i));
    } else {
        for (const char* key : {"alphabet", "initial", "final"})
            if (doc.contains(key))
                fail(std::string(key) + " only allowed for kind \"oca\"");
    }

    std::vector<Transition> pos, zero, neg;
    std::vector<Oca::LabeledTransition> labeled;
    for (std::size_t ti = 0; ti < trans.size(); ++ti) {
        const json& rec = trans[ti];
        if (!rec.is_object()) fail_at(ti, "must be an object");
        Transition t;
        t.src = lookup(index, field(rec, "src", "transition"), ti, "src");
        t.eff = parse_eff(field(rec, "eff", "transition"), ti);
        t.dst = lookup(index, field(rec, "dst", "transition"), ti, "dst");
        t.guard = parse_guard(field(rec, "guard", "transition"), ti, kind);
        if ((kind == "ocs" || kind == "oca") && t.guard == Guard::zero && t.eff < 0)
            fail_at(ti, "zero test cannot decrement");

        if (kind == "oca") {
            const json& lab = field(rec, "label", "transition");
            std::int32_t label = -1;
            if (!lab.is_null()) {
                if (!lab.is_string()) fail_at(ti, "label must be a string or null");
                auto it = letter_index.find(lab.get<std::string>());
                if (it == letter_index.end())
                    fail_at(ti, "label \"" + lab.get<std::string>() + "\" not in alphabet");
                label = it->second;
            }
            labeled.push_back({t, label});
        } else {
            if (rec.contains("label")) fail_at(ti, "label only allowed for kind \"oca\"");
            (t.guard == Guard::pos ? pos : t.guard == Guard::zero ? zero : neg).push_back(t);
        }
    }

    try {
        if (kind == "ocs") return Ocs::make(n, std::move(pos), std::move(zero), std::move(names));
        if (kind == "zocs")
            return ZOcs::make(n, std::move(pos), std::move(neg), std::move(zero),
                              std::move(names));
        std::vector<State> initial = parse_state_set(doc, "initial", index);
        std::vector<State> final = parse_state_set(doc, "final", index);
        return Oca::make(n, std::move(labeled), std::move(alphabet), std::move(initial),
                         std::move(final), std::move(names));
    } catch (const io_error&) {
        throw;
    } catch (const error& e) {
        fail(e.what());
    }
}

json parse_text(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(std::string("invalid JSON: ") + e.what());
    }
}

json transition_record(const std::vector<std::string>& names, const Transition& t) {
    json rec;
    rec["src"] = names[t.src];
    rec["eff"] = t.eff;
    rec["dst"] = names[t.dst];
    rec["guard"] = std::string(guard_name(t.guard));
    return rec;
}

std::string finish(json doc) { return doc.dump(2) + "\n"; }

// Transition order used by serialization and by PathDocument indices.
std::vector<Transition> canonical_transitions(const SystemDocument& doc) {
    std::vector<Transition> all;
    if (const Ocs* o = std::get_if<Ocs>(&doc)) {
        all.insert(all.end(), o->t_pos.begin(), o->t_pos.end());
        all.insert(all.end(), o->t_zero.begin(), o->t_zero.end());
    } else if (const Oca* a = std::get_if<Oca>(&doc)) {
        all.insert(all.end(), a->ocs.t_pos.begin(), a->ocs.t_pos.end());
        all.insert(all.end(), a->ocs.t_zero.begin(), a->ocs.t_zero.end());
    } else {
        const ZOcs& z = std::get<ZOcs>(doc);
        all.insert(all.end(), z.t_pos.begin(), z.t_pos.end());
        all.insert(all.end(), z.t_neg.begin(), z.t_neg.end());
        all.insert(all.end(), z.t_zero.begin(), z.t_zero.end());
    }
    return all;
}

const std::vector<std::string>& document_names(const SystemDocument& doc) {
    if (const Ocs* o = std::get_if<Ocs>(&doc)) return o->names;
    if (const Oca* a = std::get_if<Oca>(&doc)) return a->ocs.names;
    return std::get<ZOcs>(doc).names;
}

std::optional<State> document_state(const SystemDocument& doc, const std::string& name) {
    const std::vector<std::string>& names = document_names(doc);
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<State>(it - names.begin());
}

std::int64_t zero_configs(const Path& rho) {
    std::int64_t z = 0;
    for (const Config& c : path_configs(rho))
        if (c.counter == 0) ++z;
    return z;
}

}  // namespace

SystemDocument parse_system(std::istream& in) { return parse_document(parse_text(in)); }

SystemDocument parse_system(const std::string& text) {
    std::istringstream in(text);
    return parse_system(in);
}

std::string serialize(const Ocs& o) {
    json doc;
    doc["kind"] = "ocs";
    doc["states"] = o.names;
    json trans = json::array();
    for (const Transition& t : o.t_pos) trans.push_back(transition_record(o.names, t));
    for (const Transition& t : o.t_zero) trans.push_back(transition_record(o.names, t));
    doc["transitions"] = std::move(trans);
    return finish(std::move(doc));
}

std::string serialize(const Oca& a) {
    json doc;
    doc["kind"] = "oca";
    doc["states"] = a.ocs.names;
    doc["alphabet"] = a.alphabet;
    json trans = json::array();
    auto emit = [&](const Transition& t, std::int32_t label) {
        json rec = transition_record(a.ocs.names, t);
        if (label < 0)
            rec["label"] = nullptr;
        else
            rec["label"] = a.alphabet[label];
        trans.push_back(std::move(rec));
    };
    for (std::size_t i = 0; i < a.ocs.t_pos.size(); ++i)
        emit(a.ocs.t_pos[i], a.label_pos[i]);
    for (std::size_t i = 0; i < a.ocs.t_zero.size(); ++i)
        emit(a.ocs.t_zero[i], a.label_zero[i]);
    doc["transitions"] = std::move(trans);
    auto name_list = [&](const std::vector<State>& states) {
        json arr = json::array();
        for (State q : states) arr.push_back(a.ocs.names[q]);
        return arr;
    };
    doc["initial"] = name_list(a.initial_states);
    doc["final"] = name_list(a.final_states);
    return finish(std::move(doc));
}

std::string serialize(const ZOcs& z) {
    json doc;
    doc["kind"] = "zocs";
    doc["states"] = z.names;
    json trans = json::array();
    for (const Transition& t : z.t_pos) trans.push_back(transition_record(z.names, t));
    for (const Transition& t : z.t_neg) trans.push_back(transition_record(z.names, t));
    for (const Transition& t : z.t_zero) trans.push_back(transition_record(z.names, t));
    doc["transitions"] = std::move(trans);
    return finish(std::move(doc));
}

std::string serialize(const SystemDocument& doc) {
    return std::visit([](const auto& sys) { return serialize(sys); }, doc);
}

std::string serialize_path(const SystemDocument& doc, const Path& rho) {
    const std::vector<std::string>& names = document_names(doc);
    std::vector<Transition> all = canonical_transitions(doc);
    std::map<Transition, std::size_t> index;
    for (std::size_t i = 0; i < all.size(); ++i) index.emplace(all[i], i);

    json out;
    json steps = json::array();
    for (const auto& [cfg, t] : rho.steps) {
        auto it = index.find(t);
        if (it == index.end())
            throw precondition_error("path uses a transition outside the system");
        if (cfg.state < 0 || cfg.state >= static_cast<State>(names.size()))
            throw precondition_error("path state out of range for the system");
        json rec;
        rec["state"] = names[cfg.state];
        rec["counter"] = cfg.counter;
        rec["transition_index"] = it->second;
        steps.push_back(std::move(rec));
    }
    out["steps"] = std::move(steps);
    if (rho.target.state < 0 || rho.target.state >= static_cast<State>(names.size()))
        throw precondition_error("path state out of range for the system");
    json fin;
    fin["state"] = names[rho.target.state];
    fin["counter"] = rho.target.counter;
    out["final"] = std::move(fin);
    json summary;
    summary["length"] = rho.length();
    summary["zeros"] = zero_configs(rho);
    summary["max_counter"] = max_counter(rho);
    out["summary"] = std::move(summary);
    return finish(std::move(out));
}

Path parse_path(const SystemDocument& doc, std::istream& in) {
    json j = parse_text(in);
    if (!j.is_object()) fail("path document must be a JSON object");
    std::vector<Transition> all = canonical_transitions(doc);

    auto parse_config = [&](const json& rec, const char* where) {
        const json& state = field(rec, "state", where);
        if (!state.is_string()) fail(std::string(where) + ": state must be a name");
        std::optional<State> q = document_state(doc, state.get<std::string>());
        if (!q) fail(std::string(where) + ": unknown state \"" + state.get<std::string>() + "\"");
        const json& counter = field(rec, "counter", where);
        if (!counter.is_number_integer()) fail(std::string(where) + ": counter must be an integer");
        return Config{*q, counter.get<std::int64_t>()};
    };

    const json& steps = field(j, "steps", "path document");
    if (!steps.is_array()) fail("steps must be an array");
    Path rho;
    for (std::size_t i = 0; i < steps.size(); ++i) {
        const json& rec = steps[i];
        std::string where = "step " + std::to_string(i);
        if (!rec.is_object()) fail(where + ": must be an object");
        Config cfg = parse_config(rec, where.c_str());
        const json& ti = field(rec, "transition_index", where.c_str());
        if (!ti.is_number_integer() || ti.get<std::int64_t>() < 0 ||
            ti.get<std::uint64_t>() >= all.size())
            fail(where + ": transition_index out of range");
        rho.steps.emplace_back(cfg, all[ti.get<std::size_t>()]);
    }
    rho.target = parse_config(field(j, "final", "path document"), "final");

    std::optional<PathViolation> bad;
    if (const ZOcs* z = std::get_if<ZOcs>(&doc))
        bad = z_validate_path(*z, rho);
    else if (const Oca* a = std::get_if<Oca>(&doc))
        bad = validate_path_in(a->ocs, rho);
    else
        bad = validate_path_in(std::get<Ocs>(doc), rho);
    if (bad)
        fail("step " + std::to_string(bad->step) + ": " + bad->rule);

    const json& summary = field(j, "summary", "path document");
    const json& len = field(summary, "length", "summary");
    const json& zeros = field(summary, "zeros", "summary");
    const json& maxc = field(summary, "max_counter", "summary");
    if (!len.is_number_integer() || len.get<std::int64_t>() !=
                                        static_cast<std::int64_t>(rho.length()))
        fail("summary: length does not match the steps");
    if (!zeros.is_number_integer() || zeros.get<std::int64_t>() != zero_configs(rho))
        fail("summary: zeros does not match the steps");
    if (!maxc.is_number_integer() || maxc.get<std::int64_t>() != max_counter(rho))
        fail("summary: max_counter does not match the steps");
    return rho;
}

Path parse_path(const SystemDocument& doc, const std::string& text) {
    std::istringstream in(text);
    return parse_path(doc, in);
}

}  // namespace ocspath
