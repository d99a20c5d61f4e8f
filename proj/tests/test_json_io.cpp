#include "support.hpp"

#include "nahodge/json_io.hpp"

using namespace support;
using nahodge::io::json;
namespace io = nahodge::io;

TEST_CASE("scalar documents", "[io]") {
    CHECK(io::to_scalar(json(3)) == Scalar(3));
    CHECK(io::to_scalar(json("1/2-i")) == Scalar(Rational(1, 2), Rational(-1)));
    CHECK(io::to_scalar(json::parse(R"({"order": 8, "coeffs": ["0", "1"]})")) == Scalar::root_of_unity(8));
    CHECK_THROWS_AS(io::to_scalar(json::parse("[1]")), PreconditionError);
    CHECK_THROWS_AS(io::to_rational(json("1/0")), PreconditionError);
    gen::Rng rng(81);
    for (int k = 0; k < 100; ++k) {
        const Scalar s = gen::gaussian(rng, 20, 9);
        CHECK(io::to_scalar(io::from_scalar(s)) == s);
        const Scalar z = Scalar::root_of_unity(static_cast<int>(gen::uniform(rng, 3, 12)), static_cast<int>(gen::uniform(rng, 0, 11)));
        CHECK(io::to_scalar(io::from_scalar(z)) == z);
    }
}

TEST_CASE("missing fields are precondition errors", "[io]") {
    CHECK_THROWS_AS(io::to_filtration(json::parse(R"({"dim": 2})")), PreconditionError);
    CHECK_THROWS_AS(io::to_rees(json::parse(R"({"dim": 1, "basis": [["1"]]})")), PreconditionError);
    CHECK_THROWS_AS(io::to_filtration(json::parse(R"({"dim": 1, "steps": [{"p": 0, "basis": [["1"]]}, {"p": 2, "basis": []}]})")),
                    PreconditionError);
}

TEST_CASE("filtration and rees documents round trip", "[io]") {
    const json doc = json::parse(R"({"dim": 2, "steps": [{"p": 0, "basis": [["1", "0"], ["0", "1"]]}, {"p": 1, "basis": [["2", "2*i"]]}]})");
    FilteredSpace fs = io::to_filtration(doc);
    json out = io::from_filtration(fs);
    CHECK(out["steps"][1]["basis"] == json::parse(R"([["1", "1*i"]])"));
    CHECK(io::from_filtration(io::to_filtration(out)) == out);
    json rees = io::from_rees(build_rees(fs));
    CHECK(io::from_rees(io::to_rees(rees)) == rees);
}

TEST_CASE("laurent documents round trip", "[io]") {
    gen::Rng rng(82);
    for (int k = 0; k < 50; ++k) {
        LaurentPoly p = LaurentPoly::constant(2, Scalar(0));
        for (int t = 0; t < 3; ++t)
            p += LaurentPoly::monomial({static_cast<int>(gen::uniform(rng, -2, 2)), static_cast<int>(gen::uniform(rng, -2, 2))},
                                       gen::gaussian(rng));
        CHECK(io::to_laurent_poly(io::from_laurent_poly(p), 2) == p);
        Laurent1<Scalar> u = zmono(static_cast<int>(gen::uniform(rng, -3, 3)), gen::gaussian(rng)) + zmono(4, gen::gaussian(rng));
        CHECK(io::to_laurent1(io::from_laurent1(u)) == u);
    }
    CHECK(io::to_laurent1(json::parse(R"([{"exp": [2], "coeff": 1}])")) == zmono(2));
}

TEST_CASE("disk family documents round trip", "[io]") {
    const json doc = json::parse(R"({"rank": 2, "entries": [[[{"zexp": 1, "coeff": {"num": ["1"]}}],
        [{"zexp": 0, "coeff": {"num": ["0", "1"], "den": ["1", "1"]}}]], [[], [{"zexp": -1, "coeff": {"num": ["1"]}}]]]})");
    DiskFamily F = io::to_disk_family(doc);
    CHECK(io::to_disk_family(io::from_disk_family(F)) == F);
    CHECK(special_splitting(F) == std::vector<int>{1, -1});
    json pole = doc;
    pole["entries"][0][1][0]["coeff"] = json::parse(R"({"num": ["1"], "den": ["0", "1"]})");
    CHECK_THROWS_AS(io::to_disk_family(pole), PreconditionError);
}

TEST_CASE("lambda and action documents", "[io]") {
    CHECK_FALSE(io::to_lambda(json("inf")).has_value());
    CHECK(io::to_lambda(json("2+i")) == gi(2, 1));
    HodPoint p = io::to_hod_point(json::parse(R"({"beta": ["1"], "eta": ["i"], "lambda": "3"})"));
    CHECK(io::to_hod_point(io::from_hod_point(p)) == p);
    WeightedAction W = io::to_action(json::parse(R"({"weights": [0, 1, 2], "a": "-1/2"})"));
    CHECK(W.shift() == Rational(-1, 2));
    CHECK(io::from_point(io::to_point(json::parse(R"(["2", "2", 0])"))) == json::parse(R"(["1", "1", "0"])"));
}
