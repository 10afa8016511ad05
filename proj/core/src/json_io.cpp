#include "asnoc/json_io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace asnoc {

using json = nlohmann::ordered_json;

namespace {

constexpr int kSchemaVersion = 1;

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    if (!j.is_object()) throw ParseError("top-level JSON value must be an object");
    const int version = j.value("schema_version", kSchemaVersion);
    if (version > kSchemaVersion)
        throw ParseError("unsupported schema_version " + std::to_string(version));
    return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

PortKind kind_from(const std::string& s) {
    if (s == "in") return PortKind::CoreToSwitch;
    if (s == "out") return PortKind::SwitchToCore;
    throw ParseError("port kind must be \"in\" or \"out\", got \"" + s + "\"");
}

const char* kind_name(PortKind k) { return k == PortKind::CoreToSwitch ? "in" : "out"; }

}  // namespace

Project read_project(const std::string& text) {
    const json j = parse(text);
    Project p;
    if (!j.contains("cores") || !j.contains("flows"))
        throw ParseError("project needs \"cores\" and \"flows\" arrays");
    int next_id = 0;
    for (const auto& c : j.at("cores")) {
        Core core;
        core.id = c.value("id", next_id);
        core.name = c.value("name", "c" + std::to_string(core.id));
        core.pos = {c.value("x", 0.0), c.value("y", 0.0)};
        p.ccg.cores.push_back(core);
        next_id = core.id + 1;
    }
    for (const auto& f : j.at("flows")) {
        Flow flow;
        flow.src = f.at("src").get<int>();
        flow.dst = f.at("dst").get<int>();
        flow.bandwidth = f.value("bandwidth", 0.0);
        flow.latency_limit = f.value("latency_limit", 1);
        p.ccg.flows.push_back(flow);
    }
    if (j.contains("config")) {
        const json& c = j.at("config");
        p.cfg.k = c.value("k", p.cfg.k);
        p.cfg.n_sw = c.value("n_sw", p.cfg.n_sw);
        p.cfg.bw_max = c.value("bw_max", p.cfg.bw_max);
        p.cfg.max_size = c.value("max_size", p.cfg.max_size);
        p.cfg.e_bit = c.value("e_bit", p.cfg.e_bit);
        p.cfg.c_pl = c.value("c_pl", p.cfg.c_pl);
        p.cfg.max_switch_growth = c.value("max_switch_growth", p.cfg.max_switch_growth);
        p.cfg.charge_all_paths = c.value("charge_all_paths", p.cfg.charge_all_paths);
        p.cfg.debit_all_paths = c.value("debit_all_paths", p.cfg.debit_all_paths);
        if (c.contains("tables")) {
            const json& t = c.at("tables");
            if (t.contains("t_sw")) p.cfg.tables.t_sw = t.at("t_sw").get<std::vector<double>>();
            p.cfg.tables.c_sw = t.value("c_sw", p.cfg.tables.c_sw);
            auto read_map = [](const json& src, std::map<int, double>& dst) {
                dst.clear();
                for (const auto& [key, val] : src.items())
                    dst[std::stoi(key)] = val.get<double>();
            };
            if (t.contains("mux")) read_map(t.at("mux"), p.cfg.tables.mux);
            if (t.contains("demux")) read_map(t.at("demux"), p.cfg.tables.demux);
        }
    }
    return p;
}

std::string write_project(const Project& p) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["cores"] = json::array();
    for (const Core& c : p.ccg.cores)
        j["cores"].push_back({{"id", c.id}, {"name", c.name}, {"x", c.pos.x}, {"y", c.pos.y}});
    j["flows"] = json::array();
    for (const Flow& f : p.ccg.flows)
        j["flows"].push_back({{"src", f.src},
                              {"dst", f.dst},
                              {"bandwidth", f.bandwidth},
                              {"latency_limit", f.latency_limit}});
    json tables;
    tables["t_sw"] = p.cfg.tables.t_sw;
    tables["c_sw"] = p.cfg.tables.c_sw;
    json mux = json::object(), demux = json::object();
    for (const auto& [k, v] : p.cfg.tables.mux) mux[std::to_string(k)] = v;
    for (const auto& [k, v] : p.cfg.tables.demux) demux[std::to_string(k)] = v;
    tables["mux"] = mux;
    tables["demux"] = demux;
    j["config"] = {{"k", p.cfg.k},
                   {"n_sw", p.cfg.n_sw},
                   {"bw_max", p.cfg.bw_max},
                   {"max_size", p.cfg.max_size},
                   {"e_bit", p.cfg.e_bit},
                   {"c_pl", p.cfg.c_pl},
                   {"max_switch_growth", p.cfg.max_switch_growth},
                   {"charge_all_paths", p.cfg.charge_all_paths},
                   {"debit_all_paths", p.cfg.debit_all_paths},
                   {"tables", tables}};
    return dump(j);
}

Topology read_topology(const std::string& text) {
    const json j = parse(text);
    Topology t;
    for (const auto& s : j.value("switches", json::array()))
        t.switches.push_back({s.at("id").get<int>(), {s.value("x", 0.0), s.value("y", 0.0)}});
    for (const auto& l : j.value("cs_links", json::array()))
        t.cs_links.push_back({l.at("core").get<int>(), l.at("sw").get<int>(),
                              kind_from(l.at("dir").get<std::string>())});
    for (const auto& l : j.value("ss_links", json::array()))
        t.ss_links.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
    return t;
}

std::string write_topology(const Topology& t) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["switches"] = json::array();
    for (const Switch& s : t.switches)
        j["switches"].push_back({{"id", s.id}, {"x", s.pos.x}, {"y", s.pos.y}});
    j["cs_links"] = json::array();
    for (const CsLink& l : t.cs_links)
        j["cs_links"].push_back({{"core", l.core}, {"sw", l.sw}, {"dir", kind_name(l.dir)}});
    j["ss_links"] = json::array();
    for (const auto& [u, v] : t.ss_links) j["ss_links"].push_back({u, v});
    return dump(j);
}

RoutingSet read_routing(const std::string& text) {
    const json j = parse(text);
    RoutingSet r;
    for (const auto& flow_paths : j.value("paths", json::array())) {
        std::vector<Path> paths;
        for (const auto& p : flow_paths) paths.push_back(p.get<Path>());
        r.paths.push_back(paths);
    }
    return r;
}

std::string write_routing(const RoutingSet& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["paths"] = json::array();
    for (const auto& flow_paths : r.paths) {
        json fp = json::array();
        for (const Path& p : flow_paths) fp.push_back(p);
        j["paths"].push_back(fp);
    }
    return dump(j);
}

SharingPlan read_sharing(const std::string& text) {
    const json j = parse(text);
    SharingPlan p;
    auto read_groups = [](const json& src, std::map<int, std::vector<std::vector<int>>>& dst) {
        for (const auto& [key, groups] : src.items()) {
            std::vector<std::vector<int>> gs;
            for (const auto& g : groups) gs.push_back(g.get<std::vector<int>>());
            dst[std::stoi(key)] = gs;
        }
    };
    if (j.contains("inport_groups")) read_groups(j.at("inport_groups"), p.inport_groups);
    if (j.contains("outport_groups")) read_groups(j.at("outport_groups"), p.outport_groups);
    for (const auto& e : j.value("removed_sharing_edges", json::array()))
        p.removed_sharing_edges.push_back({e.at("sw").get<int>(),
                                           kind_from(e.at("kind").get<std::string>()),
                                           e.at("core_a").get<int>(),
                                           e.at("core_b").get<int>()});
    return p;
}

std::string write_sharing(const SharingPlan& p) {
    json j;
    j["schema_version"] = kSchemaVersion;
    auto write_groups = [](const std::map<int, std::vector<std::vector<int>>>& src) {
        json out = json::object();
        for (const auto& [sw, groups] : src) {
            json gs = json::array();
            for (const auto& g : groups) gs.push_back(g);
            out[std::to_string(sw)] = gs;
        }
        return out;
    };
    j["inport_groups"] = write_groups(p.inport_groups);
    j["outport_groups"] = write_groups(p.outport_groups);
    j["removed_sharing_edges"] = json::array();
    for (const auto& e : p.removed_sharing_edges)
        j["removed_sharing_edges"].push_back({{"sw", e.sw},
                                              {"kind", kind_name(e.kind)},
                                              {"core_a", e.core_a},
                                              {"core_b", e.core_b}});
    return dump(j);
}

std::string write_power(const PowerReport& r, double fttg_energy) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["switch_mw"] = r.switch_mw;
    j["link_mw"] = r.link_mw;
    j["interface_mw"] = r.interface_mw;
    j["total_mw"] = r.total();
    if (fttg_energy >= 0.0) j["fttg_energy"] = fttg_energy;
    return dump(j);
}

std::string write_verify_report(const VerifyReport& r) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["pass"] = r.pass;
    j["checked"] = r.checked;
    j["sampled"] = r.sampled;
    j["seed"] = r.seed;
    j["failures"] = json::array();
    for (const auto& [fs, flows] : r.failures) {
        json f;
        f["switches"] = std::vector<int>(fs.switches.begin(), fs.switches.end());
        f["links"] = json::array();
        for (const auto& [u, v] : fs.links) f["links"].push_back({u, v});
        f["unroutable_flows"] = flows;
        j["failures"].push_back(f);
    }
    return dump(j);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << text;
}

}  // namespace asnoc
