#include "dqmat/io.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dqmat {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_matrix(const DQMatrix& a) {
    std::string out = "DQMAT v1 " + std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) {
            const DualQuaternion& q = a(i, j);
            out += format_double(q.st.w) + " " + format_double(q.st.x) + " " + format_double(q.st.y) +
                   " " + format_double(q.st.z) + " " + format_double(q.in.w) + " " +
                   format_double(q.in.x) + " " + format_double(q.in.y) + " " + format_double(q.in.z) +
                   "\n";
        }
    return out;
}

DQMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    std::string magic, version;
    long long rows = -1, cols = -1;
    if (!(in >> magic >> version >> rows >> cols) || magic != "DQMAT" || version != "v1")
        throw ParseError("matrix file: expected header 'DQMAT v1 <rows> <cols>'");
    if (rows < 0 || cols < 0) throw ParseError("matrix file: negative dimensions");
    DQMatrix a(static_cast<Index>(rows), static_cast<Index>(cols));
    double v[8];
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j) {
            for (double& x : v) {
                if (!(in >> x)) throw ParseError("matrix file: truncated record list");
                if (!std::isfinite(x)) throw ParseError("matrix file: non-finite value");
            }
            a(i, j) = DualQuaternion(Quaternion(v[0], v[1], v[2], v[3]), Quaternion(v[4], v[5], v[6], v[7]));
        }
    std::string trailing;
    if (in >> trailing) throw ParseError("matrix file: trailing tokens after last record");
    return a;
}

DQMatrix read_matrix_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    try {
        return parse_matrix(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_matrix_file(const std::string& path, const DQMatrix& a) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write file: " + path);
    f << format_matrix(a);
}

std::string file_digest(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open file: " + path);
    uint64_t h = 1469598103934665603ull;
    char c;
    while (f.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "fnv1a:%016" PRIx64, h);
    return buf;
}

void Report::add(const std::string& key, double value) { add(key, format_double(value)); }

const std::string* Report::find(const std::string& key) const {
    for (const auto& [k, v] : items)
        if (k == key) return &v;
    return nullptr;
}

std::string Report::get(const std::string& key) const {
    const std::string* v = find(key);
    if (!v) throw ParseError("report: missing key '" + key + "'");
    return *v;
}

std::string Report::to_text() const {
    std::string out = "dqmat-report v1\n";
    for (const auto& [k, v] : items) out += k + " = " + v + "\n";
    return out;
}

Report Report::from_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "dqmat-report v1")
        throw ParseError("report: expected header 'dqmat-report v1'");
    Report r;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto sep = line.find(" = ");
        if (sep == std::string::npos) throw ParseError("report: malformed line: " + line);
        r.add(line.substr(0, sep), line.substr(sep + 3));
    }
    return r;
}

void write_report_file(const std::string& path, const Report& r) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write file: " + path);
    f << r.to_text();
}

Report read_report_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    try {
        return Report::from_text(ss.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace dqmat
