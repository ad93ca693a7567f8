#include "rpp/dataset.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace rpp {

namespace {

using nlohmann::json;

json parse_line(const std::string& line, const std::string& source, std::size_t line_no) {
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object())
        throw data_error(source + ":" + std::to_string(line_no) + ": malformed record");
    return record;
}

void warn_unknown_fields(const json& record, const std::set<std::string>& known,
                         std::set<std::string>& warned, const std::string& source) {
    for (const auto& [key, _] : record.items()) {
        if (known.count(key) || warned.count(key)) continue;
        warned.insert(key);
        std::cerr << source << ": ignoring unknown field '" << key << "'\n";
    }
}

double require_number(const json& record, const char* key, const std::string& source,
                      std::size_t line_no) {
    if (!record.contains(key) || !record[key].is_number())
        throw data_error(source + ":" + std::to_string(line_no) + ": missing numeric '" +
                         key + "'");
    return record[key].get<double>();
}

}  // namespace

Dataset read_dataset(std::istream& in, const std::string& source_name) {
    Dataset dataset;
    std::string line;
    std::size_t line_no = 0;
    std::set<std::string> warned;

    if (!std::getline(in, line))
        throw data_error(source_name + ": empty dataset (missing manifest line)");
    ++line_no;
    json manifest = parse_line(line, source_name, line_no);
    if (manifest.value("schema", "") != "rpp-dataset/1")
        throw data_error(source_name + ":1: expected manifest with schema rpp-dataset/1");
    dataset.window_end = require_number(manifest, "window_end", source_name, line_no);
    if (!(dataset.window_end > 0.0))
        throw data_error(source_name + ":1: window_end must be > 0");
    dataset.time_unit = manifest.value("time_unit", "years");
    warn_unknown_fields(manifest, {"schema", "window_end", "time_unit"}, warned, source_name);

    struct ItemAccumulator {
        std::vector<double> arrivals;
        double window_end;
    };
    std::vector<std::string> order;
    std::map<std::string, ItemAccumulator> items;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        json record = parse_line(line, source_name, line_no);
        if (!record.contains("item") || !record["item"].is_string())
            throw data_error(source_name + ":" + std::to_string(line_no) +
                             ": record missing string 'item'");
        warn_unknown_fields(record, {"item", "t", "window_end"}, warned, source_name);
        const std::string id = record["item"].get<std::string>();
        auto it = items.find(id);
        if (it == items.end()) {
            it = items.emplace(id, ItemAccumulator{{}, dataset.window_end}).first;
            order.push_back(id);
        }
        if (record.contains("window_end")) {
            const double w = require_number(record, "window_end", source_name, line_no);
            if (!(w > 0.0))
                throw data_error(source_name + ":" + std::to_string(line_no) +
                                 ": window_end must be > 0");
            it->second.window_end = w;
        }
        if (record.contains("t")) {
            const double t = require_number(record, "t", source_name, line_no);
            if (!(t >= 0.0) || !std::isfinite(t))
                throw data_error(source_name + ":" + std::to_string(line_no) +
                                 ": event time must be finite and >= 0");
            it->second.arrivals.push_back(t);
        }
    }

    dataset.sequences.reserve(order.size());
    for (const auto& id : order) {
        auto& acc = items[id];
        std::sort(acc.arrivals.begin(), acc.arrivals.end());
        if (!acc.arrivals.empty() && acc.arrivals.back() > acc.window_end)
            throw data_error(source_name + ": item " + id + " has an event past its window");
        dataset.sequences.emplace_back(id, std::move(acc.arrivals), acc.window_end);
    }
    return dataset;
}

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open dataset: " + path);
    return read_dataset(in, path);
}

void write_dataset(const Dataset& dataset, std::ostream& out) {
    json manifest = {{"schema", "rpp-dataset/1"},
                     {"window_end", dataset.window_end},
                     {"time_unit", dataset.time_unit}};
    out << manifest.dump() << "\n";
    for (const auto& seq : dataset.sequences) {
        json decl = {{"item", seq.item_id()}};
        if (seq.window_end() != dataset.window_end) decl["window_end"] = seq.window_end();
        out << decl.dump() << "\n";
        for (double t : seq.arrivals()) {
            json ev = {{"item", seq.item_id()}, {"t", t}};
            out << ev.dump() << "\n";
        }
    }
}

void write_dataset(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write dataset: " + path);
    write_dataset(dataset, out);
    out.flush();
    if (!out) throw data_error("failed writing dataset: " + path);
}

TruthSidecar read_truth(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open truth sidecar: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw data_error("malformed truth sidecar " + path + ": " + e.what());
    }
    if (doc.value("schema", "") != "rpp-truth/1")
        throw data_error(path + ": expected schema rpp-truth/1");
    TruthSidecar truth;
    if (doc.contains("prior")) {
        truth.has_prior = true;
        truth.prior.alpha = doc["prior"].value("alpha", 0.0);
        truth.prior.beta = doc["prior"].value("beta", 0.0);
    }
    if (doc.contains("seed")) {
        truth.has_seed = true;
        truth.seed = doc["seed"].get<std::uint64_t>();
    }
    for (const auto& item : doc.at("items")) {
        truth.ids.push_back(item.at("item").get<std::string>());
        ItemParams p;
        p.fitness = item.at("lambda").get<double>();
        p.mu = item.at("mu").get<double>();
        p.sigma = item.at("sigma").get<double>();
        truth.params.push_back(p);
    }
    return truth;
}

void write_truth(const TruthSidecar& truth, const std::string& path) {
    json doc;
    doc["schema"] = "rpp-truth/1";
    if (truth.has_prior)
        doc["prior"] = {{"alpha", truth.prior.alpha}, {"beta", truth.prior.beta}};
    if (truth.has_seed) doc["seed"] = truth.seed;
    json items = json::array();
    for (std::size_t i = 0; i < truth.ids.size(); ++i) {
        items.push_back({{"item", truth.ids[i]},
                         {"lambda", truth.params[i].fitness},
                         {"mu", truth.params[i].mu},
                         {"sigma", truth.params[i].sigma}});
    }
    doc["items"] = std::move(items);
    std::ofstream out(path);
    if (!out) throw data_error("cannot write truth sidecar: " + path);
    out << doc.dump(2) << "\n";
    out.flush();
    if (!out) throw data_error("failed writing truth sidecar: " + path);
}

std::string fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open file for digest: " + path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buffer[4096];
    while (in.read(buffer, sizeof buffer) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    std::ostringstream hex;
    hex << std::hex;
    for (int shift = 60; shift >= 0; shift -= 4) hex << ((hash >> shift) & 0xF);
    return hex.str();
}

}  // namespace rpp
