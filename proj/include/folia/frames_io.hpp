// FrameSpec JSON serialization; the schema the CLI consumes.

#pragma once

#include "folia/frames.hpp"

#include <string>

namespace folia {

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

std::string frame_spec_to_json(const FrameSpec& spec);
FrameSpec frame_spec_from_json(const std::string& text);
FrameSpec frame_spec_from_file(const std::string& path);

} // namespace folia
