#include "simsmooth/io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace simsmooth {

using ordered_json = nlohmann::ordered_json;

// ---------- string parsers ----------

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

long parse_positive_int(const std::string& text, const char* what) {
    size_t pos = 0;
    long value = 0;
    try {
        value = std::stol(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(std::string(what) + ": expected an integer, got '" + text + "'");
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) {
        throw std::invalid_argument(std::string(what) + ": trailing characters in '" + text + "'");
    }
    if (value < 1) {
        throw std::invalid_argument(std::string(what) + ": value must be at least 1, got " + text);
    }
    return value;
}

std::string strip(const std::string& text) {
    size_t a = 0;
    size_t b = text.size();
    while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
    return text.substr(a, b - a);
}

}  // namespace

DimProfile parse_dims(const std::string& text) {
    std::vector<int> dims;
    for (const std::string& part : split(text, ',')) {
        dims.push_back(static_cast<int>(parse_positive_int(strip(part), "parse_dims")));
    }
    return DimProfile(dims);
}

PartySet parse_subset(const std::string& text) {
    std::vector<int> parties;
    for (const std::string& part : split(text, ',')) {
        long index = parse_positive_int(strip(part), "parse_subset");
        parties.push_back(static_cast<int>(index - 1));  // 1-based on the wire
    }
    return PartySet(parties);
}

std::vector<PartySet> parse_subsets(const std::string& text) {
    std::vector<PartySet> subsets;
    for (const std::string& part : split(text, ';')) {
        subsets.push_back(parse_subset(part));
    }
    return subsets;
}

// ---------- number formatting ----------

std::string format_double(double value) {
    char buf[40];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value) break;
    }
    return buf;
}

std::string entropy_to_string(const EntropyValue& value) {
    return value.infinite ? "inf" : format_double(value.bits);
}

namespace {

ordered_json entropy_to_json(const EntropyValue& value) {
    if (value.infinite) return "inf";
    return value.bits;
}

}  // namespace

// ---------- state documents ----------

StateVariant state_from_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("state_from_json: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("state_from_json: document must be an object");
    if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].empty()) {
        throw ParseError("state_from_json: missing or empty 'dims' array");
    }
    std::vector<int> dims;
    for (const auto& d : doc["dims"]) {
        if (!d.is_number_integer() || d.get<long>() < 1) {
            throw ParseError("state_from_json: 'dims' entries must be positive integers");
        }
        dims.push_back(static_cast<int>(d.get<long>()));
    }
    const bool has_matrix = doc.contains("matrix");
    const bool has_classical = doc.contains("classical");
    if (has_matrix == has_classical) {
        throw ParseError("state_from_json: exactly one of 'matrix' or 'classical' required");
    }

    DimProfile profile(dims);
    const long dim = profile.total_dim();
    try {
        if (has_classical) {
            const auto& arr = doc["classical"];
            if (!arr.is_array() || static_cast<long>(arr.size()) != dim) {
                throw ParseError("state_from_json: 'classical' must hold " + std::to_string(dim) +
                                 " weights");
            }
            std::vector<double> p(dim);
            for (long i = 0; i < dim; ++i) {
                if (!arr[i].is_number()) {
                    throw ParseError("state_from_json: 'classical' entries must be numbers");
                }
                p[i] = arr[i].get<double>();
            }
            return ClassicalState::validated(profile, std::move(p));
        }
        const auto& arr = doc["matrix"];
        if (!arr.is_array() || static_cast<long>(arr.size()) != dim * dim) {
            throw ParseError("state_from_json: 'matrix' must hold " + std::to_string(dim * dim) +
                             " row-major [re, im] pairs");
        }
        Matrix m(dim, dim);
        for (long k = 0; k < dim * dim; ++k) {
            const auto& entry = arr[k];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number()) {
                throw ParseError("state_from_json: matrix entry " + std::to_string(k) +
                                 " is not an [re, im] pair");
            }
            m(k / dim, k % dim) = std::complex<double>(entry[0].get<double>(), entry[1].get<double>());
        }
        return DensityOperator::validated(profile, std::move(m));
    } catch (const std::invalid_argument& e) {
        throw ValidationError(e.what());
    }
}

std::string state_to_json(const StateVariant& state) {
    ordered_json doc;
    if (std::holds_alternative<ClassicalState>(state)) {
        const ClassicalState& p = std::get<ClassicalState>(state);
        doc["dims"] = p.profile().dims();
        ordered_json arr = ordered_json::array();
        for (long i = 0; i < p.dim(); ++i) arr.push_back(p.probs()[i]);
        doc["classical"] = std::move(arr);
    } else {
        const DensityOperator& rho = std::get<DensityOperator>(state);
        doc["dims"] = rho.profile().dims();
        ordered_json arr = ordered_json::array();
        const Matrix& m = rho.matrix();
        for (long i = 0; i < rho.dim(); ++i) {
            for (long j = 0; j < rho.dim(); ++j) {
                arr.push_back(ordered_json::array({m(i, j).real(), m(i, j).imag()}));
            }
        }
        doc["matrix"] = std::move(arr);
    }
    return doc.dump();
}

const DimProfile& state_profile(const StateVariant& state) {
    return std::visit([](const auto& s) -> const DimProfile& { return s.profile(); }, state);
}

double state_trace(const StateVariant& state) {
    if (std::holds_alternative<ClassicalState>(state)) {
        return std::get<ClassicalState>(state).mass();
    }
    return std::get<DensityOperator>(state).trace();
}

// ---------- files ----------

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("read_text_file: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError("read_text_file: read failure on " + path);
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("write_text_file: cannot open " + path);
    out << text;
    out.flush();
    if (!out) throw IoError("write_text_file: write failure on " + path);
}

StateVariant load_state_file(const std::string& path) {
    return state_from_json(read_text_file(path));
}

void save_state_file(const StateVariant& state, const std::string& path) {
    write_text_file(path, state_to_json(state));
}

// ---------- report documents ----------

namespace {

ordered_json subset_to_json(const PartySet& subset) {
    ordered_json arr = ordered_json::array();
    for (int p : subset.members()) arr.push_back(p + 1);  // 1-based on the wire
    return arr;
}

}  // namespace

std::string report_to_json(const SmoothingReport& report, const std::string& method) {
    ordered_json doc;
    doc["schema_version"] = 1;
    doc["epsilon"] = report.epsilon;
    doc["metric"] = metric_name(report.metric);
    if (!method.empty()) doc["method"] = method;
    ordered_json subsets = ordered_json::array();
    ordered_json records = ordered_json::array();
    for (const SubsetRecord& r : report.records) {
        subsets.push_back(subset_to_json(r.subset));
        ordered_json rec;
        rec["subset"] = subset_to_json(r.subset);
        rec["hmin_before"] = entropy_to_json(r.hmin_before);
        rec["target_trace"] = entropy_to_json(r.target_trace);
        rec["target_purified"] = entropy_to_json(r.target_purified);
        rec["hmin_after"] = entropy_to_json(r.hmin_after);
        records.push_back(std::move(rec));
    }
    doc["subsets"] = std::move(subsets);
    doc["per_subset"] = std::move(records);
    doc["distance_trace"] = report.distance_trace;
    doc["distance_purified"] = report.distance_purified;
    doc["bound_trace"] = report.bound_trace;
    doc["bound_purified"] = report.bound_purified;
    doc["entropy_pass"] = report.entropy_pass;
    doc["distance_pass"] = report.distance_pass;
    return doc.dump(2);
}

std::string report_to_csv(const SmoothingReport& report, const std::string& method) {
    std::string out =
        "subset,hmin_before,target_trace,target_purified,hmin_after,"
        "distance_trace,distance_purified,bound_trace,bound_purified,"
        "entropy_pass,distance_pass,metric,method\n";
    for (const SubsetRecord& r : report.records) {
        out += r.subset.to_string();
        out += ',' + entropy_to_string(r.hmin_before);
        out += ',' + entropy_to_string(r.target_trace);
        out += ',' + entropy_to_string(r.target_purified);
        out += ',' + entropy_to_string(r.hmin_after);
        out += ',' + format_double(report.distance_trace);
        out += ',' + format_double(report.distance_purified);
        out += ',' + format_double(report.bound_trace);
        out += ',' + format_double(report.bound_purified);
        out += report.entropy_pass ? ",1" : ",0";
        out += report.distance_pass ? ",1" : ",0";
        out += ',' + metric_name(report.metric);
        out += ',' + (method.empty() ? std::string("-") : method);
        out += '\n';
    }
    return out;
}

}  // namespace simsmooth
