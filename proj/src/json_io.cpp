#include "bicmwb/json_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace bicmwb {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("constellation json: " + what);
}

} // namespace

LoadedConstellation parse_constellation_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("not valid JSON (") + e.what() + ")");
    }
    if (!doc.is_object()) fail("top level must be an object");
    if (!doc.contains("points")) fail("missing \"points\"");
    const json& jpoints = doc["points"];
    if (!jpoints.is_array() || jpoints.empty()) fail("\"points\" must be a non-empty array");

    std::vector<cplx> points;
    points.reserve(jpoints.size());
    for (std::size_t i = 0; i < jpoints.size(); ++i) {
        const json& p = jpoints[i];
        if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
            fail("point " + std::to_string(i) + " must be a [re, im] number pair");
        const double re = p[0].get<double>(), im = p[1].get<double>();
        if (!std::isfinite(re) || !std::isfinite(im))
            fail("point " + std::to_string(i) + " must be finite");
        points.emplace_back(re, im);
    }

    std::vector<double> probs;
    if (doc.contains("probs")) {
        const json& jprobs = doc["probs"];
        if (!jprobs.is_array() || jprobs.size() != points.size())
            fail("\"probs\" must be an array matching \"points\" in length");
        double sum = 0.0;
        for (std::size_t i = 0; i < jprobs.size(); ++i) {
            if (!jprobs[i].is_number()) fail("prob " + std::to_string(i) + " must be a number");
            const double v = jprobs[i].get<double>();
            if (!(v >= 0.0 && v <= 1.0))
                fail("prob " + std::to_string(i) + " must lie in [0, 1]");
            sum += v;
            probs.push_back(v);
        }
        if (std::abs(sum - 1.0) > 1e-12) fail("probabilities must sum to 1 (got " +
                                              std::to_string(sum) + ")");
    } else {
        probs.assign(points.size(), 1.0 / static_cast<double>(points.size()));
    }

    if (!doc.contains("labels")) {
        if (doc.contains("m")) fail("\"m\" given without \"labels\"");
        return {Constellation(points, probs), std::nullopt};
    }

    const json& jlabels = doc["labels"];
    if (!jlabels.is_array() || jlabels.size() != points.size())
        fail("\"labels\" must be an array matching \"points\" in length");
    std::size_t m = 0;
    std::vector<std::uint32_t> labels;
    labels.reserve(points.size());
    for (std::size_t i = 0; i < jlabels.size(); ++i) {
        if (!jlabels[i].is_string()) fail("label " + std::to_string(i) + " must be a bit string");
        const std::string s = jlabels[i].get<std::string>();
        if (i == 0) {
            m = s.size();
            if (m == 0 || m > 30) fail("label length must be between 1 and 30 bits");
        } else if (s.size() != m) {
            fail("labels must all have the same length");
        }
        std::uint32_t value = 0;
        for (char ch : s) {
            if (ch != '0' && ch != '1')
                fail("label " + std::to_string(i) + " must contain only 0/1");
            value = (value << 1) | static_cast<std::uint32_t>(ch - '0');
        }
        labels.push_back(value);
    }
    if (doc.contains("m")) {
        if (!doc["m"].is_number_integer()) fail("\"m\" must be an integer");
        if (doc["m"].get<long>() != static_cast<long>(m))
            fail("\"m\" disagrees with the label length");
    }
    if (points.size() != (std::size_t{1} << m))
        fail("a labeled constellation needs exactly 2^m points");
    for (double p : probs)
        if (std::abs(p - 1.0 / static_cast<double>(points.size())) > 1e-12)
            fail("a labeled constellation must be equiprobable");

    LabeledConstellation labeled = [&] {
        try {
            return LabeledConstellation(points, labels);
        } catch (const std::invalid_argument& e) {
            fail(e.what());
        }
    }();
    return {labeled.base(), std::move(labeled)};
}

LoadedConstellation load_constellation_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_constellation_json(buf.str());
}

} // namespace bicmwb
