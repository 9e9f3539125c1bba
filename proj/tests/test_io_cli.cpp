#include <doctest.h>

#include <cstdio>
#include <nlohmann/json.hpp>

#include "qconv/io_json.hpp"
#include "qconv/rng.hpp"

using namespace qconv;
using nlohmann::json;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/qconv_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("matrix json round trip is exact") {
    Rng rng(1);
    ComplexMatrix m(5, 7);
    for (auto& v : m.data()) v = rng.complex_normal();
    TempFile f("matrix.json");
    write_json_file(f.path, matrix_to_json(m));
    const auto back = matrix_from_json(read_json_file(f.path));
    CHECK(back.rows() == 5);
    CHECK(back.cols() == 7);
    CHECK(back.max_abs_diff(m) == 0.0);
}

TEST_CASE("matrix json rejects length mismatches") {
    json j;
    j["rows"] = 2;
    j["cols"] = 2;
    j["re"] = {1.0, 0.0, 0.0};
    j["im"] = {0.0, 0.0, 0.0};
    CHECK_THROWS_AS(matrix_from_json(j), ParseError);
}

TEST_CASE("latin and tensor json round trips") {
    const auto cubes = latin_hypercubes(4, 3, 2);
    const auto j = latin_to_json(cubes[0]);
    const auto back = latin_from_json(j);
    CHECK(back.cells == cubes[0].cells);
    CHECK(back.arity == 3);

    const auto t = cyclic_tensor(3);
    const auto tb = tensor_from_json(tensor_to_json(t));
    CHECK(tb.entries == t.entries);
}

TEST_CASE("bases json round trip") {
    Rng rng(9);
    const auto b = BasisFamily::random(4, rng);
    const auto back = bases_from_json(bases_to_json(b));
    REQUIRE(back.v.size() == 4);
    for (std::size_t k = 0; k < 4; ++k) CHECK(back.v[k].max_abs_diff(b.v[k]) == 0.0);
}

TEST_CASE("missing file raises IoError") {
    CHECK_THROWS_AS(read_json_file("/nonexistent/qconv.json"), IoError);
}

TEST_CASE("malformed json raises ParseError") {
    TempFile f("broken.json");
    {
        std::FILE* fp = std::fopen(f.path.c_str(), "w");
        std::fputs("{not json", fp);
        std::fclose(fp);
    }
    CHECK_THROWS_AS(read_json_file(f.path), ParseError);
}
