// Copyright Contributors to the splatbench project
// SPDX-License-Identifier: Apache-2.0

#include "splatbench/io/ingest.hpp"

#include "bytes.hpp"
#include "splatbench/error.hpp"
#include "splatbench/io/container.hpp"

#include <algorithm>
#include <charconv>
#include <optional>
#include <sstream>

namespace splatbench::io {

namespace {

enum class PlyFormat { Ascii, BinaryLittleEndian };

enum class ScalarType { I8, U8, I16, U16, I32, U32, F32, F64 };

std::optional<ScalarType> parse_scalar_type(std::string_view name) {
    if (name == "char" || name == "int8") return ScalarType::I8;
    if (name == "uchar" || name == "uint8") return ScalarType::U8;
    if (name == "short" || name == "int16") return ScalarType::I16;
    if (name == "ushort" || name == "uint16") return ScalarType::U16;
    if (name == "int" || name == "int32") return ScalarType::I32;
    if (name == "uint" || name == "uint32") return ScalarType::U32;
    if (name == "float" || name == "float32") return ScalarType::F32;
    if (name == "double" || name == "float64") return ScalarType::F64;
    return std::nullopt;
}

std::size_t scalar_size(ScalarType t) {
    switch (t) {
    case ScalarType::I8:
    case ScalarType::U8: return 1;
    case ScalarType::I16:
    case ScalarType::U16: return 2;
    case ScalarType::I32:
    case ScalarType::U32:
    case ScalarType::F32: return 4;
    case ScalarType::F64: return 8;
    }
    return 0;
}

double read_scalar(std::span<const std::uint8_t> bytes, std::size_t offset, ScalarType t) {
    switch (t) {
    case ScalarType::I8: return static_cast<std::int8_t>(bytes[offset]);
    case ScalarType::U8: return bytes[offset];
    case ScalarType::I16: return static_cast<std::int16_t>(detail::get_u16(bytes, offset));
    case ScalarType::U16: return detail::get_u16(bytes, offset);
    case ScalarType::I32: return static_cast<std::int32_t>(detail::get_u32(bytes, offset));
    case ScalarType::U32: return detail::get_u32(bytes, offset);
    case ScalarType::F32: return detail::get_f32(bytes, offset);
    case ScalarType::F64: return std::bit_cast<double>(detail::get_u64(bytes, offset));
    }
    return 0.0;
}

struct PlyProperty {
    std::string name;
    ScalarType type = ScalarType::F32;
    bool is_list = false;
};

struct PlyElement {
    std::string name;
    std::size_t count = 0;
    std::vector<PlyProperty> properties;

    std::size_t row_size() const {
        std::size_t size = 0;
        for (const auto& p : properties) {
            size += scalar_size(p.type);
        }
        return size;
    }
};

std::vector<std::string_view> split_whitespace(std::string_view line) {
    std::vector<std::string_view> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) tokens.push_back(line.substr(start, i - start));
    }
    return tokens;
}

double parse_number(std::string_view token) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw Error(ErrorCode::UnsupportedPly, "not a number: '" + std::string(token) + "'");
    }
    return value;
}

double to_float32(double v) { return static_cast<double>(static_cast<float>(v)); }

void check_labels(const LabeledCloud& cloud) {
    for (std::size_t i = 0; i < cloud.labels.size(); ++i) {
        if (!(cloud.labels[i] >= 0.0 && cloud.labels[i] <= 1.0)) {
            throw Error(ErrorCode::LabelOutOfRange, "label at index " + std::to_string(i));
        }
    }
}

std::string slurp(const std::filesystem::path& path) {
    const auto bytes = read_file_bytes(path);
    return std::string(bytes.begin(), bytes.end());
}

} // namespace

IngestResult parse_ply(std::string_view contents, std::string_view label_property) {
    std::size_t pos = 0;
    auto next_line = [&]() -> std::optional<std::string_view> {
        if (pos >= contents.size()) return std::nullopt;
        const std::size_t end = contents.find('\n', pos);
        const std::size_t stop = end == std::string_view::npos ? contents.size() : end;
        std::string_view line = contents.substr(pos, stop - pos);
        pos = end == std::string_view::npos ? contents.size() : end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        return line;
    };

    const auto magic = next_line();
    if (!magic || *magic != "ply") {
        throw Error(ErrorCode::UnsupportedPly, "missing 'ply' magic line");
    }

    std::optional<PlyFormat> format;
    std::vector<PlyElement> elements;
    bool header_done = false;
    while (const auto line = next_line()) {
        const auto tokens = split_whitespace(*line);
        if (tokens.empty() || tokens[0] == "comment" || tokens[0] == "obj_info") {
            continue;
        }
        if (tokens[0] == "end_header") {
            header_done = true;
            break;
        }
        if (tokens[0] == "format") {
            if (tokens.size() < 2) throw Error(ErrorCode::UnsupportedPly, "malformed format line");
            if (tokens[1] == "ascii") {
                format = PlyFormat::Ascii;
            } else if (tokens[1] == "binary_little_endian") {
                format = PlyFormat::BinaryLittleEndian;
            } else {
                throw Error(ErrorCode::UnsupportedPly, "unsupported format " + std::string(tokens[1]));
            }
        } else if (tokens[0] == "element") {
            if (tokens.size() < 3) throw Error(ErrorCode::UnsupportedPly, "malformed element line");
            elements.push_back({std::string(tokens[1]), static_cast<std::size_t>(parse_number(tokens[2])), {}});
        } else if (tokens[0] == "property") {
            if (elements.empty()) throw Error(ErrorCode::UnsupportedPly, "property before any element");
            PlyProperty prop;
            if (tokens.size() >= 2 && tokens[1] == "list") {
                if (tokens.size() < 5) throw Error(ErrorCode::UnsupportedPly, "malformed list property");
                prop.is_list = true;
                prop.name = std::string(tokens[4]);
            } else {
                if (tokens.size() < 3) throw Error(ErrorCode::UnsupportedPly, "malformed property line");
                const auto type = parse_scalar_type(tokens[1]);
                if (!type) throw Error(ErrorCode::UnsupportedPly, "unknown type " + std::string(tokens[1]));
                prop.type = *type;
                prop.name = std::string(tokens[2]);
            }
            elements.back().properties.push_back(prop);
        } else {
            throw Error(ErrorCode::UnsupportedPly, "unexpected header line '" + std::string(*line) + "'");
        }
    }
    if (!header_done) throw Error(ErrorCode::Truncated, "PLY header has no end_header");
    if (!format) throw Error(ErrorCode::UnsupportedPly, "PLY header has no format line");

    const auto vertex_it =
        std::find_if(elements.begin(), elements.end(), [](const PlyElement& e) { return e.name == "vertex"; });
    if (vertex_it == elements.end()) throw Error(ErrorCode::UnsupportedPly, "no vertex element");
    const PlyElement& vertex = *vertex_it;
    for (const auto& p : vertex.properties) {
        if (p.is_list) throw Error(ErrorCode::UnsupportedPly, "list property '" + p.name + "' on vertices");
    }

    auto find_property = [&](std::string_view name) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < vertex.properties.size(); ++k) {
            if (vertex.properties[k].name == name) return k;
        }
        return std::nullopt;
    };
    const auto ix = find_property("x"), iy = find_property("y"), iz = find_property("z");
    if (!ix || !iy || !iz) throw Error(ErrorCode::MissingColumn, "vertex element lacks x, y or z");
    const auto il = find_property(label_property);

    IngestResult result;
    auto& cloud = result.cloud;
    cloud.points.resize(vertex.count);
    cloud.labels.assign(vertex.count, 0.0);
    if (!il) {
        result.warnings.push_back("no '" + std::string(label_property) + "' property; labels set to 0");
    }

    if (*format == PlyFormat::Ascii) {
        for (const auto& element : elements) {
            const bool is_vertex = &element == &vertex;
            for (std::size_t row = 0; row < element.count; ++row) {
                const auto line = next_line();
                if (!line) throw Error(ErrorCode::Truncated, "PLY body ends early in " + element.name);
                if (!is_vertex) continue;
                const auto tokens = split_whitespace(*line);
                if (tokens.size() < vertex.properties.size()) {
                    throw Error(ErrorCode::Truncated, "vertex row " + std::to_string(row) + " is short");
                }
                cloud.points[row] = {to_float32(parse_number(tokens[*ix])), to_float32(parse_number(tokens[*iy])),
                                     to_float32(parse_number(tokens[*iz]))};
                if (il) cloud.labels[row] = to_float32(parse_number(tokens[*il]));
            }
            if (is_vertex) break;
        }
    } else {
        const auto body = std::span<const std::uint8_t>(
            reinterpret_cast<const std::uint8_t*>(contents.data()) + pos, contents.size() - pos);
        std::size_t offset = 0;
        for (const auto& element : elements) {
            if (&element == &vertex) break;
            for (const auto& p : element.properties) {
                if (p.is_list) {
                    throw Error(ErrorCode::UnsupportedPly, "list property in element before vertices");
                }
            }
            offset += element.count * element.row_size();
        }
        std::vector<std::size_t> property_offset(vertex.properties.size());
        std::size_t row_size = 0;
        for (std::size_t k = 0; k < vertex.properties.size(); ++k) {
            property_offset[k] = row_size;
            row_size += scalar_size(vertex.properties[k].type);
        }
        if (body.size() < offset + vertex.count * row_size) {
            throw Error(ErrorCode::Truncated, "binary PLY body shorter than the vertex table");
        }
        auto value = [&](std::size_t row, std::size_t k) {
            return to_float32(
                read_scalar(body, offset + row * row_size + property_offset[k], vertex.properties[k].type));
        };
        for (std::size_t row = 0; row < vertex.count; ++row) {
            cloud.points[row] = {value(row, *ix), value(row, *iy), value(row, *iz)};
            if (il) cloud.labels[row] = value(row, *il);
        }
    }
    check_labels(cloud);
    return result;
}

IngestResult ingest_ply(const std::filesystem::path& path, std::string_view label_property) {
    return parse_ply(slurp(path), label_property);
}

IngestResult parse_csv(std::string_view contents, std::string_view label_column) {
    std::istringstream in{std::string(contents)};
    std::string line;
    auto split_commas = [](const std::string& text) {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream row(text);
        while (std::getline(row, field, ',')) {
            while (!field.empty() && (field.back() == '\r' || field.back() == ' ')) field.pop_back();
            while (!field.empty() && field.front() == ' ') field.erase(field.begin());
            fields.push_back(field);
        }
        return fields;
    };

    if (!std::getline(in, line)) throw Error(ErrorCode::MissingColumn, "CSV has no header row");
    const auto header = split_commas(line);
    auto column = [&](std::string_view name) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < header.size(); ++k) {
            if (header[k] == name) return k;
        }
        return std::nullopt;
    };
    const auto cx = column("x"), cy = column("y"), cz = column("z");
    if (!cx || !cy || !cz) throw Error(ErrorCode::MissingColumn, "CSV header lacks x, y or z");
    const auto cl = column(label_column);

    IngestResult result;
    if (!cl) {
        result.warnings.push_back("no '" + std::string(label_column) + "' column; labels set to 0");
    }
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line == "\r") continue;
        const auto fields = split_commas(line);
        auto field = [&](std::size_t k) {
            if (k >= fields.size()) {
                throw Error(ErrorCode::MissingColumn, "row " + std::to_string(row) + " has too few fields");
            }
            double value = 0.0;
            const auto& f = fields[k];
            const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), value);
            if (ec != std::errc{} || ptr != f.data() + f.size()) {
                throw Error(ErrorCode::SchemaMismatch, "row " + std::to_string(row) + ": not a number '" + f + "'");
            }
            return to_float32(value);
        };
        result.cloud.points.push_back({field(*cx), field(*cy), field(*cz)});
        result.cloud.labels.push_back(cl ? field(*cl) : 0.0);
        ++row;
    }
    check_labels(result.cloud);
    return result;
}

IngestResult ingest_csv(const std::filesystem::path& path, std::string_view label_column) {
    return parse_csv(slurp(path), label_column);
}

} // namespace splatbench::io
