#include "emo/moea.hpp"

namespace emo {

bool Archive::insert(const Individual& x)
{
    evicted_.clear();
    for (const auto& z : members_) {
        if (dominates(z.objectives, x.objectives)) {
            return false;
        }
    }
    std::erase_if(members_, [&](const Individual& z) {
        if (weakly_dominates(x.objectives, z.objectives)) {
            evicted_.push_back(z.objectives);
            return true;
        }
        return false;
    });
    members_.push_back(x);
    return true;
}

} // namespace emo
