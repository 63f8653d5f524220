#pragma once

#include <stdexcept>
#include <string>

namespace ramsey {

enum class Errc {
    NotATree,
    NonCanonical,
    VertexOutOfRange,
    DuplicateAttachPoint,
    EmptyLinearOrder,
    EmptyAlphabet,
    NotRigid,
    NotEmbedding,
    NotLeaf,
    NotSealed,
    DomainMismatch,
    NotComposable,
    SpfuViolated,
    ResourceCapExceeded,
    NotFoundWithinBound,
    PrerequisiteFailed,
    InvalidArgument,
    SchemaMismatch,
};

const char* to_string(Errc code) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what);

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace ramsey
