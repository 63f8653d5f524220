#include "ramsey/error.hpp"

namespace ramsey {

const char* to_string(Errc code) noexcept
{
    switch (code) {
    case Errc::NotATree: return "NotATree";
    case Errc::NonCanonical: return "NonCanonical";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::DuplicateAttachPoint: return "DuplicateAttachPoint";
    case Errc::EmptyLinearOrder: return "EmptyLinearOrder";
    case Errc::EmptyAlphabet: return "EmptyAlphabet";
    case Errc::NotRigid: return "NotRigid";
    case Errc::NotEmbedding: return "NotEmbedding";
    case Errc::NotLeaf: return "NotLeaf";
    case Errc::NotSealed: return "NotSealed";
    case Errc::DomainMismatch: return "DomainMismatch";
    case Errc::NotComposable: return "NotComposable";
    case Errc::SpfuViolated: return "SpfuViolated";
    case Errc::ResourceCapExceeded: return "ResourceCapExceeded";
    case Errc::NotFoundWithinBound: return "NotFoundWithinBound";
    case Errc::PrerequisiteFailed: return "PrerequisiteFailed";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SchemaMismatch: return "SchemaMismatch";
    }
    return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
{
}

}  // namespace ramsey
