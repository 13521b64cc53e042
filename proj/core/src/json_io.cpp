#include "graphlim/json_io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace graphlim {

namespace {

std::string real17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

using json = nlohmann::ordered_json;

json witness_json(const std::vector<std::vector<int>>& witness) {
    json out = json::array();
    for (const auto& set : witness) out.push_back(set);
    return out;
}

} // namespace

std::string kernel_to_json(const StepKernel& w) {
    std::ostringstream out;
    out << "{\"weights\":[";
    for (int i = 0; i < w.parts(); ++i) out << (i ? "," : "") << real17(w.weight(i));
    out << "],\"values\":[";
    for (int i = 0; i < w.parts(); ++i) {
        out << (i ? ",[" : "[");
        for (int j = 0; j < w.parts(); ++j) out << (j ? "," : "") << real17(w.value(i, j));
        out << "]";
    }
    out << "],\"range\":\"" << (w.range() == KernelRange::graphon ? "graphon" : "signed")
        << "\"}";
    return out.str();
}

StepKernel kernel_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("kernel json: ") + e.what());
    }
    if (!doc.contains("weights") || !doc.contains("values"))
        throw std::invalid_argument("kernel json: needs \"weights\" and \"values\"");
    std::vector<double> weights = doc["weights"].get<std::vector<double>>();
    std::vector<std::vector<double>> values =
        doc["values"].get<std::vector<std::vector<double>>>();
    KernelRange range = KernelRange::graphon;
    if (doc.contains("range")) {
        const std::string r = doc["range"].get<std::string>();
        if (r == "signed")
            range = KernelRange::signed_kernel;
        else if (r != "graphon")
            throw std::invalid_argument("kernel json: range must be \"graphon\" or \"signed\"");
    }
    return StepKernel(std::move(weights), std::move(values), range);
}

std::string report_to_json(const DeviationReport& rep) {
    json doc;
    doc["schema"] = "graphlim.deviation/1";
    doc["property"] = rep.property;
    if (!rep.pattern.empty()) doc["pattern"] = rep.pattern;
    doc["p"] = rep.p;
    if (rep.has_gamma) doc["gamma"] = rep.gamma;
    doc["induced"] = rep.induced;
    doc["samples"] = rep.samples;
    doc["exhaustive"] = rep.exhaustive;
    doc["max_dev"] = rep.max_dev;
    doc["witness"] = witness_json(rep.witness);
    doc["seed"] = rep.seed;
    if (!rep.annotation.empty()) doc["annotation"] = rep.annotation;
    return doc.dump();
}

std::string report_to_csv(const DeviationReport& rep) {
    std::ostringstream out;
    out << "property,pattern,p,gamma,induced,samples,exhaustive,max_dev,seed\n";
    out << rep.property << "," << rep.pattern << "," << real17(rep.p) << ","
        << (rep.has_gamma ? real17(rep.gamma) : "") << "," << (rep.induced ? 1 : 0) << ","
        << rep.samples << "," << (rep.exhaustive ? 1 : 0) << "," << real17(rep.max_dev) << ","
        << rep.seed << "\n";
    return out.str();
}

std::string cut_result_to_json(const CutResult& res) {
    json doc;
    doc["schema"] = "graphlim.cut/1";
    doc["value"] = res.value;
    doc["witness_s"] = res.witness_s;
    doc["witness_t"] = res.witness_t;
    doc["exact"] = res.exact;
    if (!res.note.empty()) doc["note"] = res.note;
    return doc.dump();
}

std::string verdict_to_json(const HFVerdict& verdict) {
    json doc;
    doc["schema"] = "graphlim.hf/1";
    doc["status"] = verdict.status == HFVerdict::Status::counterexample
                        ? "counterexample"
                        : "certified-at-tolerance";
    doc["p"] = verdict.p;
    doc["p_conjugate"] = verdict.p_conjugate;
    doc["tolerance"] = verdict.tolerance;
    json ws = json::array();
    for (const auto& w : verdict.witnesses) {
        json entry;
        entry["u"] = w.u;
        entry["v"] = w.v;
        entry["s"] = w.s;
        entry["max_residual"] = w.max_residual;
        ws.push_back(entry);
    }
    doc["witnesses"] = ws;
    return doc.dump();
}

std::string convergence_to_csv(const ConvergenceReport& rep) {
    std::ostringstream out;
    out << "n,pattern,deviation\n";
    for (const auto& row : rep.rows)
        out << row.n << "," << row.pattern << "," << real17(row.deviation) << "\n";
    return out.str();
}

std::string convergence_to_json(const ConvergenceReport& rep) {
    json doc;
    doc["schema"] = "graphlim.convergence/1";
    json rows = json::array();
    for (const auto& row : rep.rows) {
        json entry;
        entry["n"] = row.n;
        entry["pattern"] = row.pattern;
        entry["deviation"] = row.deviation;
        rows.push_back(entry);
    }
    doc["rows"] = rows;
    return doc.dump();
}

} // namespace graphlim
