#pragma once

#include <string_view>

namespace fieldscope::resources {

extern const std::string_view stopwords_en;
extern const std::string_view contractions_en;

}  // namespace fieldscope::resources
