#pragma once

#include "semeq/comb_map.hpp"

namespace semeq {

// Corner cutting. New vertices are the directed edges (vertex, incident edge)
// of m; every q-gon becomes a 2q-gon and every degree-d vertex a d-gon.
// A map of type [q^p] becomes [p^1,(2q)^2]; [p,q,p,q] becomes [4,2p,2q].
// Throws NotPolyhedral.
CombMap truncate(const CombMap& m);

// New vertices are the edges of m, two of them adjacent when they are
// consecutive on a face. Faces: one q-gon per q-gon, one d-gon per vertex.
// A map of type [q^p] becomes [p,q,p,q]; [p,q,p,q] becomes [4,p,4,q].
// Throws NotPolyhedral.
CombMap rectify(const CombMap& m);

}  // namespace semeq
