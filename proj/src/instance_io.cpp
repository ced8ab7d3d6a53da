#include "shadow/instance_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "shadow/errors.hpp"

namespace shadow {

using nlohmann::json;

std::string instance_to_json(const Instance& inst) {
    json j;
    json rows = json::array();
    for (int i = 0; i < inst.p.m(); ++i) {
        json row = json::array();
        for (int k = 0; k < inst.p.n(); ++k) row.push_back(to_string(inst.p.A()(i, k)));
        rows.push_back(std::move(row));
    }
    j["A"] = std::move(rows);
    json rhs = json::array();
    for (int i = 0; i < inst.p.m(); ++i) rhs.push_back(to_string(inst.p.b()[i]));
    j["b"] = std::move(rhs);
    json meta;
    meta["kind"] = inst.kind;
    for (const auto& [k, v] : inst.meta) meta[k] = v;
    j["meta"] = std::move(meta);
    return j.dump(2);
}

Instance instance_from_json(const std::string& text) {
    json j = json::parse(text);
    if (!j.contains("A") || !j.contains("b")) throw BadParams("instance needs A and b");
    const auto& rows = j["A"];
    const int m = static_cast<int>(rows.size());
    if (m == 0) throw BadParams("empty constraint matrix");
    const int n = static_cast<int>(rows[0].size());
    Mat a(m, n);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw BadParams("ragged constraint matrix");
        for (int k = 0; k < n; ++k) a(i, k) = parse_rational(rows[i][k].get<std::string>());
    }
    const auto& rhs = j["b"];
    if (static_cast<int>(rhs.size()) != m) throw BadParams("b length mismatch");
    Vec b(m);
    for (int i = 0; i < m; ++i) b[i] = parse_rational(rhs[i].get<std::string>());

    Instance inst{Polyhedron(std::move(a), std::move(b)), "", {}};
    if (j.contains("meta")) {
        for (const auto& [k, v] : j["meta"].items()) {
            if (k == "kind")
                inst.kind = v.get<std::string>();
            else
                inst.meta[k] = v.is_string() ? v.get<std::string>() : v.dump();
        }
    }
    return inst;
}

void save_instance(const Instance& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << instance_to_json(inst) << "\n";
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return instance_from_json(ss.str());
}

std::string trace_to_jsonl(const PivotTrace& trace) {
    std::ostringstream os;
    for (const auto& rec : trace.records) {
        json j;
        j["lambda"] = to_string(rec.lambda);
        j["leave"] = rec.leave;
        j["enter"] = rec.enter;
        os << j.dump() << "\n";
    }
    return os.str();
}

std::string crossing_report_csv(const CrossingReport& report) {
    std::ostringstream os;
    os << "trial,count,raw_count\n";
    for (size_t i = 0; i < report.counts.size(); ++i)
        os << i << "," << report.counts[i] << "," << report.raw_counts[i] << "\n";
    return os.str();
}

Vec parse_vector(const std::string& csv) {
    std::vector<Rational> vals;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) vals.push_back(parse_rational(item));
    if (vals.empty()) throw BadParams("empty vector literal");
    Vec v(static_cast<int>(vals.size()));
    for (size_t i = 0; i < vals.size(); ++i) v[static_cast<int>(i)] = vals[i];
    return v;
}

Basis parse_basis(const std::string& csv) {
    std::vector<int> idx;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) idx.push_back(std::stoi(item));
    if (idx.empty()) throw BadParams("empty basis literal");
    return Basis(idx);
}

}  // namespace shadow
