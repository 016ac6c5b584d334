#include "doctest.h"

#include "graphiso/family.hpp"
#include "graphiso/report.hpp"
#include "graphiso/spectral.hpp"
#include "graphiso/suite.hpp"
#include "graphiso/walks.hpp"

using namespace graphiso;

TEST_CASE("report envelope embeds config and version") {
    RunConfig cfg;
    cfg.subcommand = "constants";
    cfg.graph = "cycle:6";
    cfg.p = {2.0, 3.0};
    cfg.seed = 9;
    cfg.threads = resolve_threads(4);
    cfg.tolerances["chain"] = 1e-7;
    const Json rep = make_report(cfg, Json{{"x", 1}});
    CHECK(rep["artifact"] == "graphiso");
    CHECK(rep["version"] == kArtifactVersion);
    CHECK(rep["config"]["subcommand"] == "constants");
    CHECK(rep["config"]["p"].size() == 2);
    CHECK(rep["config"]["threads"] == 4);
    CHECK(rep["config"]["tolerances"]["chain"] == 1e-7);
    CHECK(rep["result"]["x"] == 1);
    CHECK(rep.contains("timestamp_unix_ms"));
}

TEST_CASE("thread resolution order: flag, env, hardware") {
    CHECK(resolve_threads(3) == 3);
    CHECK(resolve_threads(0) >= 1);
}

TEST_CASE("chain report serialization") {
    const auto g = make_cycle(6);
    const ChainReport rep = verify_chain(g, 2.0, 8, 1);
    const Json j = to_json(rep);
    CHECK(j["p"] == 2.0);
    CHECK(j["all_hold"] == true);
    CHECK(j["items"].size() == rep.items.size());
    CHECK(j["items"][0].contains("slack"));
}

TEST_CASE("rho series CSV shape") {
    RhoSeries s;
    s.rho = {1.0, 0.0, 0.5};
    s.loss = {0.0, 0.0, 0.0};
    const std::string csv = rho_series_csv(s);
    CHECK(csv.rfind("k,rho,loss\n", 0) == 0);
    CHECK(csv.find("\n2,0.5,0\n") != std::string::npos);
}

TEST_CASE("quick acceptance battery passes") {
    for (int id : {2, 3, 9}) {
        const CriterionResult r = run_criterion(id, /*quick=*/true);
        CHECK(r.pass);
        CHECK(r.id == id);
        CHECK(!r.name.empty());
    }
}
