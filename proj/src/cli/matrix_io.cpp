#include "kproj/cli/matrix_io.hpp"

#include <unistd.h>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace kproj::cli {

namespace {

void append_number(std::string& out, double x)
{
    if (x == 0.0 && std::signbit(x)) {
        out += "-0.0";
        return;
    }
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    out += buf;
}

double finite_number(const nlohmann::json& v)
{
    if (!v.is_number()) throw IoError("matrix entry is not a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw IoError("matrix entry is not finite");
    return x;
}

}  // namespace

std::string format_matrix(const CMatrix& a)
{
    std::string out = "{\"rows\": " + std::to_string(a.rows()) + ", \"cols\": " + std::to_string(a.cols()) +
                      ", \"data\": [";
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        out += i == 0 ? "\n  [" : ",\n  [";
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            if (j > 0) out += ", ";
            out += '[';
            append_number(out, a(i, j).real());
            out += ", ";
            append_number(out, a(i, j).imag());
            out += ']';
        }
        out += ']';
    }
    out += a.rows() > 0 ? "\n]}\n" : "]}\n";
    return out;
}

CMatrix parse_matrix(std::string_view text)
{
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(std::string("malformed matrix file: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") || !doc.contains("data"))
        throw IoError("matrix file needs rows, cols and data");
    const auto& rows_v = doc["rows"];
    const auto& cols_v = doc["cols"];
    if (!rows_v.is_number_integer() || !cols_v.is_number_integer() || rows_v.get<long long>() < 0 ||
        cols_v.get<long long>() < 0)
        throw IoError("rows and cols must be non-negative integers");
    const auto rows = static_cast<Eigen::Index>(rows_v.get<long long>());
    const auto cols = static_cast<Eigen::Index>(cols_v.get<long long>());
    const auto& data = doc["data"];
    if (!data.is_array() || static_cast<Eigen::Index>(data.size()) != rows)
        throw IoError("data must hold exactly `rows` rows");

    CMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const auto& row = data[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols)
            throw IoError("row " + std::to_string(i) + " does not hold `cols` entries");
        for (Eigen::Index j = 0; j < cols; ++j) {
            const auto& e = row[static_cast<std::size_t>(j)];
            if (!e.is_array() || e.size() != 2)
                throw IoError("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not a [re, im] pair");
            a(i, j) = Complex(finite_number(e[0]), finite_number(e[1]));
        }
    }
    return a;
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read " + path);
    return ss.str();
}

CMatrix read_matrix_file(const std::string& path)
{
    try {
        return parse_matrix(read_text_file(path));
    } catch (const IoError& e) {
        throw IoError(path + ": " + e.what());
    }
}

void write_matrix_file(const std::string& path, const CMatrix& a)
{
    write_file_atomic(path, format_matrix(a));
}

void write_file_atomic(const std::string& path, std::string_view content)
{
    const std::string tmp = path + ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + path);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::remove(tmp.c_str());
            throw IoError("cannot write " + path);
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        const int saved = errno;
        std::remove(tmp.c_str());
        throw IoError("cannot move output into place at " + path + ": " + std::strerror(saved));
    }
}

}  // namespace kproj::cli
