#include "sdf/catalog.hpp"

#include <algorithm>

namespace sdf {

namespace {

// "(w,k,m)" or "(w,k)" as integers.
std::vector<int> parse_label(const std::string& label) {
    std::vector<int> out;
    int cur = 0;
    bool any = false;
    for (char ch : label) {
        if (ch >= '0' && ch <= '9') {
            cur = cur * 10 + (ch - '0');
            any = true;
        } else if (any) {
            out.push_back(cur);
            cur = 0;
            any = false;
        }
    }
    return out;
}

using Map = std::pair<int, int>;  // values on scenarios 1 and 2

const std::vector<Map>& all_maps() {
    static const std::vector<Map> maps{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    return maps;
}

std::string map_name(const Map& f) { return std::to_string(f.first) + std::to_string(f.second); }
int apply(const Map& f, int w) { return w == 1 ? f.first : f.second; }

class Builder {
public:
    explicit Builder(const Sdf& s) : s_(s) {
        for (std::size_t w = 0; w < s.forest().outcome_count(); ++w) parsed_.push_back(parse_label(s.forest().outcome_label(w)));
    }

    template <class Pred>
    IndexSet select(Pred pred) const {
        IndexSet out(parsed_.size());
        for (std::size_t w = 0; w < parsed_.size(); ++w)
            if (pred(parsed_[w])) out.set(w);
        return out;
    }

    IndexSet image(const std::string& move) const { return s_.image(s_.move_index(move)); }

    Eis structure(const std::vector<bool>& discrete) const {
        Eis e;
        for (std::size_t i = 0; i < s_.move_count(); ++i) {
            const IndexSet& d = s_.move(i).domain;
            e.per_move.push_back(discrete[i] ? SubSigma::discrete(d) : SubSigma::trivial(d));
        }
        return e;
    }

private:
    const Sdf& s_;
    std::vector<std::vector<int>> parsed_;
};

std::vector<NamedChoice> families(const Builder& b) {
    std::vector<NamedChoice> out;
    IndexSet root = b.image("x0");
    for (const auto& f : all_maps())
        out.push_back({"c_" + map_name(f) + "_*",
                       b.select([&](const std::vector<int>& o) { return o[1] == apply(f, o[0]); }), root});
    for (int k = 1; k <= 2; ++k)
        for (const auto& g : all_maps())
            out.push_back({"c_" + std::to_string(k) + "_" + map_name(g), b.select([&](const std::vector<int>& o) {
                               return o.size() == 3 && o[1] == k && o[2] == apply(g, o[0]);
                           }),
                           b.image("x" + std::to_string(k))});
    IndexSet second = b.image("x1") | b.image("x2");
    for (const auto& g : all_maps())
        out.push_back({"c_*_" + map_name(g),
                       b.select([&](const std::vector<int>& o) { return o.size() == 3 && o[2] == apply(g, o[0]); }),
                       second});
    return out;
}

std::vector<std::string> names(const std::string& prefix, const std::string& suffix, bool constant_only) {
    std::vector<std::string> out;
    for (const auto& f : all_maps())
        if (!constant_only || f.first == f.second) out.push_back(prefix + map_name(f) + suffix);
    return out;
}

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
    std::vector<std::string> out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

Rcs reference_structure(const Sdf& s, const ExampleCatalog& c) {
    Rcs r;
    r.per_move.resize(s.move_count());
    r.per_move[s.move_index("x0")] = {c.choice("c_11_*").outcomes, c.choice("c_22_*").outcomes};
    for (const char* x : {"x1", "x2"})
        r.per_move[s.move_index(x)] = {c.choice("c_*_11").outcomes, c.choice("c_*_22").outcomes};
    return r;
}

const auto first_constant = [] { return names("c_", "_*", true); };
const auto first_any = [] { return names("c_", "_*", false); };
const auto kg = [](int k, bool constant_only) { return names("c_" + std::to_string(k) + "_", "", constant_only); };
const auto second = [](bool constant_only) { return names("c_*_", "", constant_only); };

}  // namespace

const NamedChoice& ExampleCatalog::choice(const std::string& name) const {
    auto it = std::find_if(choices.begin(), choices.end(), [&](const NamedChoice& c) { return c.name == name; });
    if (it == choices.end()) throw Error(ErrorKind::unknown_element, "unknown choice " + name);
    return *it;
}

const NamedEis& ExampleCatalog::structure(const std::string& name) const {
    auto it = std::find_if(eis.begin(), eis.end(), [&](const NamedEis& e) { return e.name == name; });
    if (it == eis.end()) throw Error(ErrorKind::unknown_element, "unknown information structure " + name);
    return *it;
}

ExampleCatalog simple_catalog(const Sdf& s) {
    Builder b(s);
    ExampleCatalog c;
    c.choices = families(b);
    // Moves x0, x1, x2.
    c.eis = {{"1", b.structure({false, false, false})},
             {"2a", b.structure({false, true, true})},
             {"2b", b.structure({false, true, false})},
             {"2c", b.structure({false, false, true})},
             {"3", b.structure({true, true, true})}};
    c.reference = reference_structure(s, c);
    c.table = {{"1", concat({first_constant(), kg(1, true), kg(2, true), second(true)})},
               {"2a", concat({first_constant(), kg(1, false), kg(2, false), second(false)})},
               {"2b", concat({first_constant(), kg(1, false), kg(2, true), second(true)})},
               {"2c", concat({first_constant(), kg(1, true), kg(2, false), second(true)})},
               {"3", concat({first_any(), kg(1, false), kg(2, false), second(false)})}};
    c.negatives = {{"1", {"c_12_*", "c_21_*"}}};
    return c;
}

ExampleCatalog variant_catalog(const Sdf& s) {
    Builder b(s);
    ExampleCatalog c;
    c.choices = families(b);
    // x2 only moves in scenario 2, where both structures agree.
    c.eis = {{"1", b.structure({false, false, false})},
             {"2", b.structure({false, true, false})},
             {"3", b.structure({true, true, false})}};
    c.reference = reference_structure(s, c);
    c.table = {{"1", concat({first_constant(), kg(1, true), kg(2, true), second(true)})},
               {"2", concat({first_constant(), kg(1, false), kg(2, false), second(false)})},
               {"3", concat({first_any(), kg(1, false), kg(2, false), second(false)})}};
    c.negatives = {{"1", {"c_12_*", "c_21_*"}}};
    return c;
}

}  // namespace sdf
