#include "json_io.hpp"

namespace qca::cli {

json to_json(const QRational& v) { return v.str(); }

json to_json(const std::vector<QRational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.str());
    return a;
}

json to_json(const NodePolynomial& p) { return {{"beta", to_json(p.beta)}, {"roots", to_json(p.roots)}}; }

json to_json(const HighestWeightNode& h) { return {{"lambda", to_json(h.lambda)}, {"u", to_json(h.u)}}; }

json to_json(const HighestWeight& h) {
    json a = json::array();
    for (const auto& n : h.nodes) a.push_back(to_json(n));
    return {{"nodes", a}};
}

json to_json(const OmegaSeries& s) {
    return {{"low", s.low()}, {"order", s.order()}, {"coeffs", to_json(s.coeffs())}};
}

json to_json(const GradedSlice& s) { return {{"n", s.n}, {"gamma", s.gamma}, {"s", s.s}, {"T", s.T}}; }

json to_json(const SliceReport& r) {
    return {{"n", r.slice.n},           {"gamma", r.slice.gamma}, {"s", r.slice.s},
            {"T", r.slice.T},           {"words", r.words},       {"ideal_rank", r.ideal_rank},
            {"dim", r.dim},             {"pbw_count", r.pbw_count}, {"match", r.match}};
}

json to_json(const CheckReport& r) {
    json fam = json::object();
    for (const auto& [name, c] : r.families) fam[name] = {{"instances", c.instances}, {"failures", c.failures}};
    return fam;
}

json to_json(const Partition& p) { return p.parts(); }

QRational qr_from_json(const json& j) {
    if (j.is_number_integer()) return QRational(j.get<long>());
    return QRational::parse(j.get<std::string>());
}

std::vector<QRational> qr_list_from_json(const json& j) {
    std::vector<QRational> out;
    for (const auto& x : j) out.push_back(qr_from_json(x));
    return out;
}

NodePolynomial poly_from_json(const json& j) {
    return NodePolynomial(qr_from_json(j.at("beta")), qr_list_from_json(j.at("roots")));
}

HighestWeightNode hw_node_from_json(const json& j) {
    HighestWeightNode h;
    h.lambda = qr_from_json(j.at("lambda"));
    h.u = qr_list_from_json(j.at("u"));
    return h;
}

HighestWeight hw_from_json(const json& j) {
    HighestWeight h;
    for (const auto& n : j.at("nodes")) h.nodes.push_back(hw_node_from_json(n));
    return h;
}

OmegaSeries series_from_json(const json& j) {
    return OmegaSeries(j.at("low").get<int>(), j.at("order").get<int>(), qr_list_from_json(j.at("coeffs")));
}

SliceReport slice_report_from_json(const json& j) {
    SliceReport r;
    r.slice = {j.at("n").get<int>(), j.at("gamma").get<std::vector<int>>(), j.at("s").get<int>(), j.at("T").get<int>()};
    r.words = j.at("words").get<int>();
    r.ideal_rank = j.at("ideal_rank").get<int>();
    r.dim = j.at("dim").get<int>();
    r.pbw_count = j.at("pbw_count").get<long>();
    r.match = j.at("match").get<bool>();
    return r;
}

}  // namespace qca::cli
