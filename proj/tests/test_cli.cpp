#include <fstream>
#include <random>
#include <sstream>

#include "doctest.h"
#include "random_structures.hpp"
#include "sdf_cli/instance.hpp"
#include "sdf_cli/run.hpp"

using namespace sdf;
using namespace sdf::cli;

namespace {

std::string slurp(const std::string& name) {
    std::ifstream f(std::string(SDF_CORPUS_DIR) + "/" + name);
    REQUIRE(f);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

ErrorKind parse_error_kind(const std::string& text, std::string* message = nullptr) {
    try {
        parse_instance(text);
    } catch (const Error& e) {
        if (message) *message = e.what();
        return e.kind();
    }
    FAIL("parsed without error");
    return ErrorKind::invalid_argument;
}

const CheckRecord& record(const Report& r, const std::string& id) {
    for (const auto& c : r.checks)
        if (c.id == id) return c;
    FAIL("no record " << id);
    return r.checks.front();
}

const std::vector<std::string> kCorpus{"simple_explicit.json", "variant_explicit.json", "timing_game.json",
                                       "up_and_out.json",      "product_rational.json", "builtin_simple.json",
                                       "w3_failure.json",      "w0_failure.json",       "not_a_forest.json"};

}  // namespace

TEST_CASE("builtins") {
    for (const auto& name : builtin_names()) {
        Instance in = load_builtin(name);
        REQUIRE(in.sdf);
        Report r = run(in, default_commands(in));
        CAPTURE(name);
        CHECK(r.ok());
    }
    Instance via_doc = parse_instance(R"({"kind": "builtin", "name": "simple"})");
    CHECK(via_doc.kind == "builtin");
    CHECK(via_doc.name == "simple");
    CHECK(parse_error_kind(R"({"kind": "builtin", "name": "nope"})") == ErrorKind::unresolved_reference);
}

TEST_CASE("corpus documents parse") {
    for (const auto& f : kCorpus) {
        CAPTURE(f);
        CHECK_NOTHROW(parse_instance(slurp(f)));
    }
    Instance timing = parse_instance(slurp("timing_game.json"));
    CHECK(timing.kind == "action-path");
    REQUIRE(timing.po);
    CHECK(timing.po->actions().agent_count() == 2);
    CHECK(timing.po->time().points() == std::vector<Time>{Time(0), Time(1), Time(2)});
    CHECK(timing.windows.size() + timing.agent_choices.size() >= 50);

    Instance rational = parse_instance(slurp("product_rational.json"));
    CHECK(rational.po->time().at(1) == Time(1, 2));

    Instance w3 = parse_instance(slurp("w3_failure.json"));
    Report r = run(w3, {"apw"});
    CHECK_FALSE(r.ok());
    CHECK(record(r, "apw").witness.find("W3") != std::string::npos);
}

TEST_CASE("diagnostics carry positions") {
    std::string msg;
    CHECK(parse_error_kind(slurp("truncated.json"), &msg) == ErrorKind::syntax_error);
    CHECK(msg.find("line ") != std::string::npos);
    CHECK(msg.find("column ") != std::string::npos);
    CHECK(parse_error_kind("{\n  \"kind\": ,\n}", &msg) == ErrorKind::syntax_error);
    CHECK(msg.find("line 2") != std::string::npos);

    CHECK(parse_error_kind(slurp("unresolved_node.json"), &msg) == ErrorKind::unresolved_reference);
    CHECK(msg.find("/moves/0/nodes/1") != std::string::npos);

    CHECK(parse_error_kind(R"({"kind": "explicit-sdf"})", &msg) == ErrorKind::schema_error);
    CHECK(msg.find("scenarios") != std::string::npos);
    CHECK(parse_error_kind(R"({"kind": 3})", &msg) == ErrorKind::schema_error);
    CHECK(msg.find("expected") != std::string::npos);
    CHECK(msg.find("found") != std::string::npos);
    CHECK(parse_error_kind(R"({"kind": "tree"})") == ErrorKind::schema_error);
    CHECK(parse_error_kind("[]") == ErrorKind::schema_error);
    CHECK(parse_error_kind("") == ErrorKind::syntax_error);
}

TEST_CASE("running commands") {
    Instance simple = load_builtin("simple");
    Report r = run(simple, {"verify", "enumerate-eis"});
    CHECK(r.ok());
    CHECK(record(r, "enumerate-eis").data["eis_count"] == 5);
    CHECK(record(run(load_builtin("variant"), {"enumerate-eis"}), "enumerate-eis").data["eis_count"] == 3);

    // A constant first action: the predecessors are the roots.
    Report p = run(simple, {"predecessors=c_11_*"});
    CHECK(p.ok());
    const auto& choices = record(p, "predecessors=c_11_*").data["choices"];
    REQUIRE(choices.size() == 1);
    std::vector<std::string> roots;
    const Sdf& s = *simple.sdf;
    s.image(s.move_index("x0")).for_each([&](std::size_t x) { roots.push_back(s.describe_node(x)); });
    CHECK(choices[0]["nodes"].get<std::vector<std::string>>() == roots);
    CHECK(choices[0]["matches_closed_form"] == true);

    try {
        run(simple, {"verify", "frobnicate"});
        FAIL("expected unknown-command");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::unknown_command);
    }
    CHECK_THROWS_AS(run(simple, {"predecessors=c_9_9"}), Error);

    // Missing sections make the check fail rather than pass silently.
    Instance bare = parse_instance(slurp("not_a_forest.json"));
    Report nf = run(bare, {"verify", "adapted"});
    CHECK_FALSE(nf.ok());
    CHECK_FALSE(record(nf, "adapted").ok);
}

TEST_CASE("reports are deterministic") {
    for (const auto& f : kCorpus) {
        CAPTURE(f);
        Instance a = parse_instance(slurp(f));
        Instance b = parse_instance(slurp(f));
        std::string ja = render_json(run(a, default_commands(a)));
        std::string jb = render_json(run(b, default_commands(b)));
        CHECK(ja == jb);
        CHECK_FALSE(ja.empty());
        CHECK(nlohmann::json::parse(ja).is_object());
    }
}

TEST_CASE("corpus verdicts") {
    for (const char* f : {"simple_explicit.json", "variant_explicit.json", "timing_game.json", "up_and_out.json",
                          "product_rational.json", "builtin_simple.json"}) {
        CAPTURE(f);
        Instance in = parse_instance(slurp(f));
        Report r = run(in, default_commands(in));
        for (const auto& c : r.checks) {
            CAPTURE(c.id);
            CAPTURE(c.witness);
            CHECK(c.ok);
        }
    }
    for (const char* f : {"w3_failure.json", "w0_failure.json", "not_a_forest.json"}) {
        Instance in = parse_instance(slurp(f));
        CHECK_FALSE(run(in, default_commands(in)).ok());
    }
}

TEST_CASE("parser never crashes on damaged documents") {
    auto& g = fixture::rng();
    const std::string alphabet = "{}[]\",:0123456789abcdefghijklmnopqrstuvwxyz/-_ \n";
    std::size_t parsed = 0, rejected = 0;
    for (const auto& f : kCorpus) {
        std::string text = slurp(f);
        for (int trial = 0; trial < 60; ++trial) {
            std::string t = text;
            std::uniform_int_distribution<std::size_t> pos(0, t.size() - 1);
            switch (trial % 4) {
                case 0: t = t.substr(0, pos(g)); break;
                case 1: t[pos(g)] = alphabet[pos(g) % alphabet.size()]; break;
                case 2: t.erase(pos(g), 1 + pos(g) % 8); break;
                default: t.insert(pos(g), std::string(1, alphabet[pos(g) % alphabet.size()])); break;
            }
            try {
                Instance in = parse_instance(t);
                ++parsed;
                // Whatever parses must also run to a report or a kernel error.
                try {
                    run(in, default_commands(in));
                } catch (const Error&) {
                }
            } catch (const Error& e) {
                ++rejected;
                CHECK_FALSE(std::string(e.what()).empty());
            }
        }
    }
    CHECK(rejected > 0);
    MESSAGE("damaged documents: " << parsed << " parsed, " << rejected << " rejected");
}
