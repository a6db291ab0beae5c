#include "stiknn/openml.hpp"

#include <httplib.h>

#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>

#include "stiknn/csv.hpp"
#include "stiknn/errors.hpp"

namespace fs = std::filesystem;

namespace stiknn {

std::string default_cache_dir() {
    if (const char* env = std::getenv("STI_CACHE_DIR"); env && *env) return env;
    if (const char* home = std::getenv("HOME"); home && *home)
        return std::string(home) + "/.cache/stiknn";
    return ".stiknn-cache";
}

namespace {

// One download at a time per dataset id.
std::mutex& lock_for(int dataset_id) {
    static std::mutex registry_mutex;
    static std::map<int, std::unique_ptr<std::mutex>> locks;
    std::lock_guard guard(registry_mutex);
    auto& slot = locks[dataset_id];
    if (!slot) slot = std::make_unique<std::mutex>();
    return *slot;
}

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    const size_t scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw IoError("malformed URL: " + url);
    const size_t path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

std::string http_get(const std::string& url, int timeout_seconds) {
    const SplitUrl parts = split_url(url);
    httplib::Client client(parts.origin);
    client.set_connection_timeout(timeout_seconds);
    client.set_read_timeout(timeout_seconds);
    client.set_follow_location(true);
    const httplib::Result res = client.Get(parts.path);
    if (!res)
        throw IoError("request to " + url + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200) {
        std::string brief = res->body.substr(0, 200);
        throw IoError("request to " + url + " returned status " + std::to_string(res->status) +
                      (brief.empty() ? "" : ": " + brief));
    }
    return res->body;
}

// --- minimal ARFF reader: numeric/nominal attributes, dense data rows ---

struct ArffAttribute {
    std::string name;
    enum Kind { Numeric, Nominal, Other } kind = Other;
};

struct ArffFile {
    std::vector<ArffAttribute> attributes;
    std::vector<std::vector<std::string>> rows;
};

std::string trim(const std::string& s) {
    size_t begin = 0;
    size_t end = s.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(s[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(s[end - 1]))) --end;
    return s.substr(begin, end - begin);
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

ArffAttribute parse_attribute(const std::string& decl) {
    // decl is the text after "@attribute".
    ArffAttribute attr;
    std::string rest = trim(decl);
    if (!rest.empty() && (rest[0] == '\'' || rest[0] == '"')) {
        const char quote = rest[0];
        const size_t close = rest.find(quote, 1);
        if (close == std::string::npos) throw IoError("unterminated attribute name: " + decl);
        attr.name = rest.substr(1, close - 1);
        rest = trim(rest.substr(close + 1));
    } else {
        const size_t space = rest.find_first_of(" \t");
        if (space == std::string::npos) throw IoError("attribute without a type: " + decl);
        attr.name = rest.substr(0, space);
        rest = trim(rest.substr(space));
    }
    if (!rest.empty() && rest[0] == '{') {
        attr.kind = ArffAttribute::Nominal;
    } else {
        const std::string kind = lower(trim(rest));
        attr.kind = (kind == "numeric" || kind == "real" || kind == "integer")
                        ? ArffAttribute::Numeric
                        : ArffAttribute::Other;
    }
    return attr;
}

std::vector<std::string> split_arff_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    char quote = 0;
    for (char c : line) {
        if (quote) {
            if (c == quote)
                quote = 0;
            else
                current.push_back(c);
        } else if (c == '\'' || c == '"') {
            quote = c;
        } else if (c == ',') {
            fields.push_back(trim(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(trim(current));
    return fields;
}

ArffFile parse_arff(const std::string& text) {
    ArffFile file;
    bool in_data = false;
    size_t pos = 0;
    int line_no = 0;
    while (pos < text.size()) {
        size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string line = trim(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (line.empty() || line[0] == '%') continue;

        if (!in_data) {
            const std::string head = lower(line.substr(0, line.find_first_of(" \t")));
            if (head == "@data") {
                in_data = true;
            } else if (head == "@attribute") {
                file.attributes.push_back(parse_attribute(line.substr(head.size())));
            }
            // @relation and unknown headers are ignored.
            continue;
        }

        if (line[0] == '{')
            throw IoError("ARFF line " + std::to_string(line_no) +
                          ": sparse data format is not supported");
        std::vector<std::string> fields = split_arff_row(line);
        if (fields.size() != file.attributes.size())
            throw IoError("ARFF line " + std::to_string(line_no) + ": expected " +
                          std::to_string(file.attributes.size()) + " values, got " +
                          std::to_string(fields.size()));
        file.rows.push_back(std::move(fields));
    }
    if (file.attributes.empty()) throw IoError("ARFF file declares no attributes");
    if (file.rows.empty()) throw IoError("ARFF file has no data rows");
    return file;
}

Dataset arff_to_dataset(const ArffFile& arff, const std::string& target_name) {
    int target = -1;
    for (size_t a = 0; a < arff.attributes.size(); ++a) {
        if (arff.attributes[a].name == target_name) {
            target = static_cast<int>(a);
            break;
        }
    }
    if (target < 0) target = static_cast<int>(arff.attributes.size()) - 1;
    if (arff.attributes[target].kind != ArffAttribute::Nominal)
        throw InputError("target attribute '" + arff.attributes[target].name +
                         "' is not nominal");

    std::vector<int> feature_columns;
    std::string offending;
    for (size_t a = 0; a < arff.attributes.size(); ++a) {
        if (static_cast<int>(a) == target) continue;
        if (arff.attributes[a].kind != ArffAttribute::Numeric) {
            if (!offending.empty()) offending += ", ";
            offending += arff.attributes[a].name;
        }
        feature_columns.push_back(static_cast<int>(a));
    }
    if (!offending.empty())
        throw InputError("non-numeric feature columns: " + offending);

    const int dim = static_cast<int>(feature_columns.size());
    if (dim == 0) throw InputError("dataset has no feature columns");

    std::vector<double> features;
    features.reserve(arff.rows.size() * static_cast<size_t>(dim));
    std::vector<std::string> labels;
    labels.reserve(arff.rows.size());
    for (size_t r = 0; r < arff.rows.size(); ++r) {
        for (int col : feature_columns) {
            const std::string& token = arff.rows[r][col];
            if (token == "?")
                throw InputError("missing value in column '" + arff.attributes[col].name +
                                 "' (data row " + std::to_string(r + 1) + ")");
            try {
                size_t used = 0;
                const double value = std::stod(token, &used);
                if (used != token.size()) throw std::invalid_argument(token);
                features.push_back(value);
            } catch (const std::exception&) {
                throw InputError("non-numeric value '" + token + "' in column '" +
                                 arff.attributes[col].name + "' (data row " +
                                 std::to_string(r + 1) + ")");
            }
        }
        labels.push_back(arff.rows[r][target]);
    }
    return Dataset(dim, std::move(features), labels, DatasetRole::Train);
}

}  // namespace

Dataset fetch_openml(int dataset_id, const OpenmlOptions& options) {
    const std::string cache_root =
        options.cache_dir.empty() ? default_cache_dir() : options.cache_dir;
    const fs::path dataset_dir = fs::path(cache_root) / "openml" / std::to_string(dataset_id);
    const fs::path cache_file = dataset_dir / "data.csv";

    std::lock_guard guard(lock_for(dataset_id));
    if (fs::exists(cache_file)) return read_dataset_csv(cache_file.string());

    const std::string meta_text =
        http_get(options.base_url + "/api/v1/json/data/" + std::to_string(dataset_id),
                 options.timeout_seconds);
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(meta_text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError("cannot parse OpenML metadata: " + std::string(e.what()));
    }
    if (!meta.contains("data_set_description"))
        throw IoError("OpenML metadata missing data_set_description: " +
                      meta_text.substr(0, 200));
    const auto& description = meta["data_set_description"];
    if (!description.contains("url"))
        throw IoError("OpenML metadata has no download url for dataset " +
                      std::to_string(dataset_id));

    std::string target_name;
    if (description.contains("default_target_attribute")) {
        target_name = description["default_target_attribute"].get<std::string>();
        if (const size_t comma = target_name.find(','); comma != std::string::npos)
            target_name = target_name.substr(0, comma);  // first of a multi-target list
    }

    const std::string arff_text =
        http_get(description["url"].get<std::string>(), options.timeout_seconds);
    const Dataset dataset = arff_to_dataset(parse_arff(arff_text), target_name);

    std::error_code ec;
    fs::create_directories(dataset_dir, ec);
    if (ec) throw IoError("cannot create cache directory " + dataset_dir.string());
    const fs::path tmp_file = dataset_dir / "data.csv.tmp";
    write_dataset_csv(dataset, tmp_file.string());
    fs::rename(tmp_file, cache_file, ec);  // atomic publish: readers never see partial files
    if (ec) throw IoError("cannot publish cache file " + cache_file.string());
    return dataset;
}

}  // namespace stiknn
