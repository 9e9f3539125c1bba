#include "qconv/io_json.hpp"

#include <fstream>

#include <nlohmann/json.hpp>

namespace qconv {

using nlohmann::json;

json matrix_to_json(const ComplexMatrix& m) {
    json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    std::vector<double> re(m.size()), im(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        re[i] = m.data()[i].real();
        im[i] = m.data()[i].imag();
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

ComplexMatrix matrix_from_json(const json& j) {
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("re") || !j.contains("im"))
        throw ParseError("matrix json needs rows, cols, re, im");
    const std::size_t rows = j.at("rows").get<std::size_t>();
    const std::size_t cols = j.at("cols").get<std::size_t>();
    const auto re = j.at("re").get<std::vector<double>>();
    const auto im = j.at("im").get<std::vector<double>>();
    if (re.size() != rows * cols || im.size() != rows * cols)
        throw ParseError("matrix json: re/im length does not match rows*cols");
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = cplx(re[i], im[i]);
    return m;
}

json latin_to_json(const LatinHypercube& h) {
    json j;
    j["d"] = h.d;
    j["arity"] = h.arity;
    j["cells"] = h.cells;
    return j;
}

LatinHypercube latin_from_json(const json& j) {
    LatinHypercube h;
    h.d = j.at("d").get<std::size_t>();
    h.arity = j.at("arity").get<std::size_t>();
    h.cells = j.at("cells").get<std::vector<int>>();
    std::size_t n = 1;
    for (std::size_t i = 0; i < h.arity; ++i) n *= h.d;
    if (h.cells.size() != n) throw ParseError("latin json: cells length mismatch");
    return h;
}

json bases_to_json(const BasisFamily& b) {
    json j;
    j["d"] = b.d;
    json vs = json::array();
    for (const auto& m : b.v) vs.push_back(matrix_to_json(m));
    j["V"] = vs;
    return j;
}

BasisFamily bases_from_json(const json& j) {
    BasisFamily b;
    b.d = j.at("d").get<std::size_t>();
    for (const auto& mj : j.at("V")) b.v.push_back(matrix_from_json(mj));
    if (b.v.size() != b.d) throw ParseError("bases json: expected d matrices");
    return b;
}

json tensor_to_json(const PermutationTensor& t) {
    json j;
    j["d"] = t.d;
    j["arity"] = t.arity;
    std::vector<int> cells(t.entries.begin(), t.entries.end());
    j["cells"] = cells;
    return j;
}

PermutationTensor tensor_from_json(const json& j) {
    PermutationTensor t;
    t.d = j.at("d").get<std::size_t>();
    t.arity = j.at("arity").get<std::size_t>();
    const auto cells = j.at("cells").get<std::vector<int>>();
    std::size_t n = 1;
    for (std::size_t i = 0; i < t.arity; ++i) n *= t.d;
    if (cells.size() != n) throw ParseError("tensor json: cells length mismatch");
    t.entries.assign(cells.begin(), cells.end());
    return t;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failed: " + path);
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError("json parse failed for " + path + ": " + e.what());
    }
    return j;
}

}  // namespace qconv
