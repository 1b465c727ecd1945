#include <doctest.h>

#include "ipalg/model_io.hpp"

using namespace ipalg;

namespace {

const char* kBasicModel = R"({
  "variables": {"w": ["a", "b"]},
  "pieces": {
    "d1": {"kind": "cone", "label": ["w"], "generators": [{"a": "1", "b": "-1"}]},
    "p1": {"kind": "prevision", "label": ["w"], "generators": [{"a": "1", "b": "-1"}]},
    "bad": {"kind": "cone", "label": ["w"], "generators": [{"a": "1", "b": "-2"}, {"a": "-1", "b": "2"}]}
  },
  "queries": [
    {"command": "prevision", "piece": "p1", "gamble": {"a": 1, "b": 0}},
    {"command": "check-coherence", "piece": "bad"},
    {"command": "contains", "piece": "d1", "gamble": {"a": 0, "b": -1}}
  ]
})";

}  // namespace

TEST_CASE("a minimal model with an empty piece parses to the vacuous piece") {
    ModelDocument doc = parse_model(R"({
      "variables": {"x": ["0", "1"]},
      "pieces": {"v": {"kind": "cone", "label": ["x"], "generators": []}}
    })");
    CHECK(doc.pieces.at("v").cone().kind() == ConeKind::Vacuous);
    ModelDocument empty_label = parse_model(R"({
      "variables": {"x": ["0", "1"]},
      "pieces": {"c": {"kind": "cone", "label": [], "generators": [{"": "1"}]}}
    })");
    CHECK(empty_label.pieces.at("c").cone().kind() == ConeKind::Vacuous);
}

TEST_CASE("floating literals and malformed rationals are rejected") {
    CHECK_THROWS_WITH_AS(parse_model(R"({
      "variables": {"x": ["0", "1"]},
      "pieces": {"p": {"kind": "cone", "label": ["x"], "generators": [{"0": 0.5, "1": "1"}]}}
    })"),
                         doctest::Contains("exact rational required"), model_error);
    CHECK_THROWS_AS(parse_model(R"({
      "variables": {"x": ["0", "1"]},
      "pieces": {"p": {"kind": "cone", "label": ["x"], "generators": [{"0": "1.5", "1": "1"}]}}
    })"),
                    model_error);
}

TEST_CASE("semantic validation") {
    // undeclared variable in a label
    CHECK_THROWS_AS(parse_model(R"({
      "variables": {"x": ["0", "1"]},
      "pieces": {"p": {"kind": "cone", "label": ["y"], "generators": []}}
    })"),
                    model_error);
    // unknown keys
    CHECK_THROWS_AS(parse_model(R"({"variables": {}, "extra": 1})"), model_error);
    CHECK_THROWS_AS(parse_model(R"({
      "variables": {"x": ["0", "1"]},
      "pieces": {"p": {"kind": "cone", "label": ["x"], "generators": [], "extra": 1}}
    })"),
                    model_error);
    // wrong gamble support
    CHECK_THROWS_AS(parse_model(R"({
      "variables": {"x": ["0", "1"]},
      "pieces": {"p": {"kind": "cone", "label": ["x"], "generators": [{"0": "1"}]}}
    })"),
                    model_error);
    CHECK_THROWS_AS(parse_model(R"({
      "variables": {"x": ["0", "1"]},
      "pieces": {"p": {"kind": "cone", "label": ["x"], "generators": [{"0": "1", "1": "1", "q": "1"}]}}
    })"),
                    model_error);
    // syntax errors carry a position
    CHECK_THROWS_WITH_AS(parse_model("{"), doctest::Contains("syntax error"), model_error);
}

TEST_CASE("the documented queries produce the documented answers") {
    ModelDocument doc = parse_model(kBasicModel);
    Json report = run_document(doc);
    REQUIRE(report["queries"].size() == 3);
    CHECK(report["queries"][0]["result"] == "1/2");
    CHECK(report["queries"][1]["result"] == "incoherent (0 in natural extension)");
    CHECK(report["queries"][2]["result"] == false);
}

TEST_CASE("rip query") {
    ModelDocument doc = parse_model(R"({
      "variables": {"X": ["0","1"], "Y": ["0","1"], "Z": ["0","1"]},
      "queries": [{"command": "rip", "scopes": [["X","Y"],["Y","Z"],["Z","X"]]}]
    })");
    Json report = run_document(doc);
    CHECK(report["queries"][0]["result"] == "RIP: no");
    CHECK(report["queries"][0]["first_violation"] == 1);

    ModelDocument chain = parse_model(R"({
      "variables": {"X": ["0","1"], "Y": ["0","1"], "Z": ["0","1"], "W": ["0","1"]},
      "queries": [{"command": "rip", "scopes": [["X","Y"],["Y","Z"],["Z","W"]]}]
    })");
    Json chain_report = run_document(chain);
    CHECK(chain_report["queries"][0]["result"] == "RIP: yes");
    CHECK(chain_report["queries"][0]["certificate"] == Json::array({2, 3}));
}

TEST_CASE("sigma bridges cone pieces to prevision queries") {
    ModelDocument doc = parse_model(R"({
      "variables": {"w": ["a", "b"]},
      "pieces": {"d1": {"kind": "cone", "label": ["w"], "generators": [{"a": "1", "b": "-1"}]}},
      "queries": [
        {"command": "prevision", "piece": "d1", "gamble": {"a": 1, "b": 0}}
      ]
    })");
    CHECK_THROWS_AS(run_document(doc), model_error);

    ModelDocument good = parse_model(R"({
      "variables": {"w": ["a", "b"]},
      "pieces": {"d1": {"kind": "cone", "label": ["w"], "generators": [{"a": "1", "b": "-1"}]}},
      "queries": [
        {"command": "sigma", "piece": "d1", "as": "q1"},
        {"command": "prevision", "piece": "q1", "gamble": {"a": 1, "b": 0}},
        {"command": "credal-vertices", "piece": "q1"}
      ]
    })");
    Json report = run_document(good);
    CHECK(report["queries"][1]["result"] == "1/2");
    REQUIRE(report["queries"][2]["result"].size() == 2);
    CHECK(report["queries"][2]["result"][0]["a"] == "1/2");
}

TEST_CASE("combine, marginalize and compatibility queries") {
    ModelDocument doc = parse_model(R"({
      "variables": {"X": ["0","1"], "Y": ["0","1"]},
      "pieces": {
        "dx": {"kind": "cone", "label": ["X"], "generators": [{"0": "1", "1": "-2"}]},
        "dxy": {"kind": "cone", "label": ["X","Y"],
                "generators": [{"0|0": "1", "0|1": "1", "1|0": "-1", "1|1": "-1"}]},
        "ev": {"kind": "event", "label": ["X","Y"], "cells": ["0|0", "0|1"]}
      },
      "queries": [
        {"command": "combine", "piece1": "dx", "piece2": "dxy", "as": "joint"},
        {"command": "marginalize", "piece": "joint", "scope": ["X"]},
        {"command": "compatible", "pieces": ["dx", "dxy"]},
        {"command": "check-coherence", "piece": "ev"},
        {"command": "solve-marginal", "pieces": ["dx", "dxy"]}
      ]
    })");
    Json report = run_document(doc);
    CHECK(report["queries"][0]["result"]["kind"] == "generated");
    CHECK(report["queries"][0]["result"]["label"] == Json::array({"X", "Y"}));
    CHECK(report["queries"][1]["result"]["kind"] == "generated");
    CHECK(report["queries"][2]["result"] == "incompatible");
    CHECK(report["queries"][3]["result"] == "coherent");
    CHECK(report["queries"][4]["rip"] == "yes");
    CHECK(report["queries"][4]["consistent"] == true);
}

TEST_CASE("reports are byte-identical across runs") {
    ModelDocument doc = parse_model(kBasicModel);
    CHECK(dump_report(run_document(doc)) == dump_report(run_document(doc)));
}

TEST_CASE("parse and serialize round-trip to a fixed point") {
    ModelDocument doc = parse_model(kBasicModel);
    std::string canonical = serialize_model(doc);
    ModelDocument again = parse_model(canonical);
    CHECK(serialize_model(again) == canonical);
    CHECK(dump_report(run_document(again)) == dump_report(run_document(doc)));
}
