#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "subspace/error.hpp"
#include "subspace/io.hpp"

namespace subspace::io {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
}

namespace {

struct Field {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Field> split_fields(std::string_view line) {
    std::vector<Field> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        std::string_view raw = line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
        std::size_t lead = 0;
        while (lead < raw.size() && (raw[lead] == ' ' || raw[lead] == '\t')) ++lead;
        std::size_t end = raw.size();
        while (end > lead && (raw[end - 1] == ' ' || raw[end - 1] == '\t')) --end;
        fields.push_back({raw.substr(lead, end - lead), start + lead + 1});
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

bool parse_number(std::string_view text, double& out) {
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    if (text.empty()) return false;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

Table parse_table(std::string_view text, std::string_view source) {
    Table table;
    std::size_t width = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool first = true;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        const std::vector<Field> fields = split_fields(line);
        std::vector<double> values(fields.size());
        std::size_t numeric = 0;
        for (std::size_t i = 0; i < fields.size(); ++i) numeric += parse_number(fields[i].text, values[i]) ? 1 : 0;

        if (first && numeric == 0) {
            for (const Field& f : fields) table.header.emplace_back(f.text);
            width = fields.size();
            first = false;
            continue;
        }
        if (first) width = fields.size();
        first = false;
        if (fields.size() != width) {
            const std::size_t col = fields.size() > width ? fields[width].column : line.size() + 1;
            throw ParseError(std::string(source), line_no, col,
                             "row " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                                 " fields, expected " + std::to_string(width));
        }
        for (std::size_t i = 0; i < fields.size(); ++i) {
            double v = 0.0;
            if (!parse_number(fields[i].text, v)) {
                throw ParseError(std::string(source), line_no, fields[i].column,
                                 "row " + std::to_string(line_no) + ": field " + std::to_string(i + 1) +
                                     " is not a number: '" + std::string(fields[i].text) + "'");
            }
            if (!std::isfinite(v)) {
                throw ParseError(std::string(source), line_no, fields[i].column,
                                 "row " + std::to_string(line_no) + ": field " + std::to_string(i + 1) +
                                     " is not finite");
            }
        }
        table.rows.push_back(std::move(values));
    }
    if (table.rows.empty()) throw ParseError(std::string(source), line_no == 0 ? 1 : line_no, 1, "no data rows");
    return table;
}

signal::ChannelSet parse_channels(std::string_view text, std::string_view source) {
    Table table = parse_table(text, source);
    signal::ChannelSet set;
    const std::size_t width = table.rows.front().size();
    set.channels.assign(width, std::vector<double>(table.rows.size()));
    for (std::size_t t = 0; t < table.rows.size(); ++t) {
        for (std::size_t c = 0; c < width; ++c) set.channels[c][t] = table.rows[t][c];
    }
    set.labels = std::move(table.header);
    return set;
}

signal::ChannelSet read_channels(const std::filesystem::path& path) {
    return parse_channels(read_file(path), path.string());
}

namespace {

void append_number(std::string& out, double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    out.append(buf, ptr);
}

}  // namespace

std::string format_channels(const signal::ChannelSet& signals) {
    std::string out;
    if (!signals.labels.empty()) {
        for (std::size_t c = 0; c < signals.labels.size(); ++c) {
            if (c) out += ',';
            out += signals.labels[c];
        }
        out += '\n';
    }
    const std::size_t n = signals.samples_per_channel();
    for (std::size_t t = 0; t < n; ++t) {
        for (std::size_t c = 0; c < signals.channel_count(); ++c) {
            if (c) out += ',';
            append_number(out, signals.channels[c][t]);
        }
        out += '\n';
    }
    return out;
}

void write_channels(const std::filesystem::path& path, const signal::ChannelSet& signals) {
    write_file(path, format_channels(signals));
}

std::string format_grid(const std::vector<double>& values, std::size_t cols) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        append_number(out, values[i]);
        out += (i + 1) % cols == 0 ? '\n' : ',';
    }
    return out;
}

void write_grid(const std::filesystem::path& path, const std::vector<double>& values, std::size_t cols) {
    write_file(path, format_grid(values, cols));
}

Matrix read_grid(const std::filesystem::path& path) {
    const Table table = parse_table(read_file(path), path.string());
    std::vector<double> flat;
    for (const auto& row : table.rows) flat.insert(flat.end(), row.begin(), row.end());
    return Matrix(table.rows.size(), table.rows.front().size(), std::move(flat));
}

}  // namespace subspace::io
