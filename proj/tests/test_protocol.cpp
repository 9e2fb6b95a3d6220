#include <cmath>

#include "doctest.h"
#include "hilbert/protocol.hpp"
#include "json.hpp"

using namespace hilbert;
using doctest::Approx;
using Json = nlohmann::ordered_json;

namespace {

const char* const kSquare = R"({"polygon": [[0,0],[1,0],[1,1],[0,1]], "sites": [{"id": "a", "pos": [0.25,0.5]}, {"id": "b", "pos": [0.75,0.5]}]})";

Json call(ProtocolSession& session, const std::string& kind, Json payload, std::optional<std::uint64_t> snapshot = {}) {
    Json req = {{"version", 1}, {"request", kind}, {"payload", std::move(payload)}};
    if (snapshot) req["snapshot"] = *snapshot;
    const Json resp = Json::parse(session.handle(req.dump()));
    CHECK(resp.at("version") == 1);
    CHECK(resp.at("request") == kind);
    return resp;
}

}  // namespace

TEST_CASE("load and query") {
    ProtocolSession session;
    CHECK(session.latest() == 0);
    const Json loaded = call(session, "load_scene", {{"scene", Json::parse(kSquare)}});
    REQUIRE(loaded.at("ok") == true);
    const std::uint64_t snap = loaded.at("snapshot");
    CHECK(snap == session.latest());
    CHECK(loaded.at("result").at("diagram").at("cells").size() == 2);
    CHECK(parse_dump(loaded.at("result").at("diagram").dump()).cells.size() == 2);

    const Json d = call(session, "query_distance", {{"from", "a"}, {"to", "b"}});
    CHECK(d.at("snapshot") == snap);
    CHECK(d.at("result").at("distance").get<double>() == Approx(std::log(3.0)).epsilon(1e-12));

    const Json hover = call(session, "query_distance", {{"point", {0.3, 0.5}}});
    CHECK(hover.at("result").at("nearest") == "a");
    CHECK(hover.at("result").at("distances").size() == 2);

    const Json ball = call(session, "query_ball", {{"center", {0.5, 0.5}}, {"r", std::log(3.0)}});
    REQUIRE(ball.at("ok") == true);
    CHECK(ball.at("result").at("vertices").size() == 4);
    CHECK(ball.at("result").at("max_residual").get<double>() <= 1e-7);

    const Json bis = call(session, "query_bisector", {{"a", "a"}, {"b", "b"}});
    REQUIRE(bis.at("ok") == true);
    CHECK(bis.at("result").at("max_residual").get<double>() <= 1e-6);
    for (const Json& piece : bis.at("result").at("pieces"))
        for (const Json& p : piece.at("polyline")) CHECK(p[0].get<double>() == Approx(0.5).epsilon(1e-9));

    // the horizontal pair lines up with the vanishing point of the top and bottom edges
    CHECK(call(session, "query_zregion", {{"a", "a"}, {"b", "b"}}).at("error").at("exit_code") == 3);
    const std::uint64_t generic =
        call(session, "insert_site", {{"site", {{"id", "c"}, {"pos", {0.6, 0.7}}}}}).at("snapshot");
    CHECK(call(session, "query_zregion", {{"a", "a"}, {"b", "c"}}, generic).at("result").at("quad").size() == 4);
    CHECK(!call(session, "query_sectors", {{"a", "a"}, {"b", "b"}}).at("result").at("sectors").empty());
    CHECK(call(session, "full_diagram", Json::object()).at("result").at("diagram").at("format") == "hilbert-voronoi-dump");
}

TEST_CASE("mutations create snapshots and are idempotent") {
    ProtocolSession session;
    const std::uint64_t s0 = call(session, "load_scene", {{"scene", Json::parse(kSquare)}}).at("snapshot");
    CHECK(call(session, "load_scene", {{"scene", Json::parse(kSquare)}}).at("snapshot") == s0);

    const Json ins = call(session, "insert_site", {{"site", {{"id", "c"}, {"pos", {0.5, 0.8}}}}}, s0);
    REQUIRE(ins.at("ok") == true);
    const std::uint64_t s1 = ins.at("snapshot");
    CHECK(s1 != s0);
    CHECK(ins.at("result").at("base") == s0);
    CHECK(ins.at("result").at("diagram").at("cells").size() == 3);
    const Json again = call(session, "insert_site", {{"site", {{"id", "c"}, {"pos", {0.5, 0.8}}}}}, s0);
    CHECK(again.at("snapshot") == s1);
    CHECK(again.at("result") == ins.at("result"));

    // older snapshots stay readable
    CHECK(call(session, "full_diagram", Json::object(), s0).at("result").at("diagram").at("cells").size() == 2);

    const Json rem = call(session, "remove_site", {{"id", "a"}}, s1);
    CHECK(rem.at("result").at("diagram").at("cells").size() == 2);

    // crossing the vertical alignment with b reports one event
    ProtocolSession moving;
    call(moving, "load_scene",
         {{"scene", {{"polygon", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}},
                     {"sites", {{{"id", "m"}, {"pos", {0.3, 0.3}}}, {{"id", "o"}, {"pos", {0.5, 0.7}}}}}}}});
    const Json mv = call(moving, "move_site", {{"id", "m"}, {"pos", {0.7, 0.3}}});
    REQUIRE(mv.at("ok") == true);
    REQUIRE(mv.at("result").at("events").size() == 1);
    const Json& ev = mv.at("result").at("events")[0];
    CHECK(ev.at("other") == "o");
    REQUIRE(ev.at("events").size() == 1);
    CHECK(ev.at("events")[0].at("u").get<double>() == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("errors use the exit code taxonomy") {
    ProtocolSession session;
    auto error_of = [&](const Json& resp) {
        CHECK(resp.at("ok") == false);
        return std::make_pair(resp.at("error").at("code").get<std::string>(), resp.at("error").at("exit_code").get<int>());
    };
    CHECK(error_of(call(session, "full_diagram", Json::object())) == std::make_pair(std::string("UnknownSnapshot"), 2));
    CHECK(error_of(Json::parse(session.handle("{nope"))) == std::make_pair(std::string("Parse"), 2));
    CHECK(error_of(Json::parse(session.handle(R"({"version": 7, "request": "full_diagram"})"))).second == 2);
    CHECK(error_of(call(session, "teleport", Json::object())).first == "Parse");

    call(session, "load_scene",
         {{"scene", {{"polygon", {{0, 0}, {1, 0}, {1, 1}, {0, 1}}},
                     {"sites", {{{"id", "a"}, {"pos", {0.5, 0.3}}}, {{"id", "b"}, {"pos", {0.5, 0.7}}}}}}}});
    CHECK(error_of(call(session, "query_distance", {{"from", "a"}, {"to", "zz"}})) == std::make_pair(std::string("UnknownSite"), 2));
    CHECK(error_of(call(session, "query_ball", {{"site", "a"}, {"r", 0.0}})).second == 2);
    CHECK(error_of(call(session, "insert_site", {{"site", {{"id", "a"}, {"pos", {0.2, 0.2}}}}})).first == "DuplicateSite");
    CHECK(error_of(call(session, "full_diagram", Json::object(), 99)).first == "UnknownSnapshot");

    const Json deg = call(session, "query_bisector", {{"a", "a"}, {"b", "b"}});
    CHECK(error_of(deg) == std::make_pair(std::string("DegeneratePair"), 3));
    CHECK(deg.at("error").at("details").at("tie_assignment") == "a");
    CHECK(deg.at("error").at("details").at("regions").size() == 2);
    CHECK(error_of(call(session, "query_zregion", {{"a", "a"}, {"b", "b"}})).second == 3);
    const Json bad_scene = call(session, "load_scene", {{"scene", {{"polygon", {{0, 0}, {1, 0}, {2, 0}}}}}});
    CHECK(error_of(bad_scene).first == "InvalidPolygon");
}

TEST_CASE("evicted snapshots") {
    ProtocolSession session(2);
    const std::uint64_t s0 = call(session, "load_scene", {{"scene", Json::parse(kSquare)}}).at("snapshot");
    call(session, "insert_site", {{"site", {{"id", "c"}, {"pos", {0.5, 0.8}}}}});
    call(session, "insert_site", {{"site", {{"id", "d"}, {"pos", {0.5, 0.2}}}}});
    CHECK(call(session, "full_diagram", Json::object(), s0).at("error").at("code") == "UnknownSnapshot");
    CHECK(call(session, "full_diagram", Json::object()).at("ok") == true);
}
