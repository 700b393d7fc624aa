#include "fnmix/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fnmix {

using nlohmann::json;

TransitionMatrix read_chain_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataMissing("cannot open chain file: " + path);
    json j;
    in >> j;
    if (!j.contains("d") || !j.contains("P")) {
        throw InvalidData("chain file needs fields 'd' and 'P'");
    }
    const int d = j["d"].get<int>();
    const auto& flat = j["P"];
    if (static_cast<int>(flat.size()) != d * d) {
        throw InvalidData("'P' must hold d*d row-major entries");
    }
    Matrix P(d, d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            P(i, k) = flat[static_cast<size_t>(i) * d + k].get<double>();
        }
    }
    std::optional<Vector> pi;
    if (j.contains("pi") && !j["pi"].is_null()) {
        if (static_cast<int>(j["pi"].size()) != d) {
            throw InvalidData("'pi' must hold d entries");
        }
        Vector v(d);
        for (int i = 0; i < d; ++i) v(i) = j["pi"][static_cast<size_t>(i)].get<double>();
        pi = v;
    }
    return validate_chain(P, pi);
}

void write_chain_json(const TransitionMatrix& chain, const std::string& path) {
    json j;
    j["d"] = chain.d();
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(chain.d()) * chain.d());
    for (int i = 0; i < chain.d(); ++i) {
        for (int k = 0; k < chain.d(); ++k) flat.push_back(chain.P()(i, k));
    }
    j["P"] = flat;
    j["pi"] = std::vector<double>(chain.pi().data(), chain.pi().data() + chain.d());
    std::ofstream out(path);
    if (!out) throw DataMissing("cannot write chain file: " + path);
    out << j.dump(2) << '\n';
}

Vector read_function_values(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataMissing("cannot open function file: " + path);
    std::vector<double> values;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        json j;
        in >> j;
        const json& arr = j.is_object() ? j.at("values") : j;
        for (const auto& v : arr) values.push_back(v.get<double>());
    } else {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (line.find_first_of("0123456789") == std::string::npos) continue;
            values.push_back(std::stod(line));
        }
    }
    if (values.empty()) throw InvalidData("empty function file: " + path);
    return Eigen::Map<Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

void write_function_json(const Vector& values, const std::string& path) {
    json j = std::vector<double>(values.data(), values.data() + values.size());
    std::ofstream out(path);
    if (!out) throw DataMissing("cannot write function file: " + path);
    out << j.dump() << '\n';
}

std::string format_sig17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct CsvWriter::Impl {
    std::ofstream out;
};

CsvWriter::CsvWriter(const std::string& path) : impl_(new Impl) {
    impl_->out.open(path);
    if (!impl_->out) {
        delete impl_;
        throw DataMissing("cannot write csv file: " + path);
    }
}

CsvWriter::~CsvWriter() { delete impl_; }

void CsvWriter::comment(const std::string& text) { impl_->out << "# " << text << '\n'; }

void CsvWriter::header(const std::vector<std::string>& names) {
    for (size_t i = 0; i < names.size(); ++i) {
        impl_->out << names[i] << (i + 1 < names.size() ? "," : "\n");
    }
}

void CsvWriter::row(const std::vector<double>& values) {
    for (size_t i = 0; i < values.size(); ++i) {
        impl_->out << format_sig17(values[i]) << (i + 1 < values.size() ? "," : "\n");
    }
}

void CsvWriter::raw_row(const std::string& line) { impl_->out << line << '\n'; }

}  // namespace fnmix
