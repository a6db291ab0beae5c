#pragma once

#include <string>

#include "stiknn/dataset.hpp"

namespace stiknn {

struct OpenmlOptions {
    std::string base_url = "https://www.openml.org";  // overridable for mirrors/tests
    std::string cache_dir;                            // empty -> default_cache_dir()
    int timeout_seconds = 60;
};

// STI_CACHE_DIR if set, else $HOME/.cache/stiknn, else ./.stiknn-cache.
std::string default_cache_dir();

// Resolves a dataset through the OpenML v1 JSON API, downloads its ARFF file
// once, converts numeric features plus a nominal target into the dataset CSV
// format, and caches the result at <cache_dir>/openml/<id>/data.csv.
// Subsequent calls are served offline from the cache. At most one download
// runs per dataset id at a time.
Dataset fetch_openml(int dataset_id, const OpenmlOptions& options = {});

}  // namespace stiknn
