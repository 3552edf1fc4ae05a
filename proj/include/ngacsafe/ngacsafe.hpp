#ifndef NGACSAFE_NGACSAFE_HPP
#define NGACSAFE_NGACSAFE_HPP

#include <ngacsafe/access.hpp>
#include <ngacsafe/dacc.hpp>
#include <ngacsafe/diagnostics.hpp>
#include <ngacsafe/graph.hpp>
#include <ngacsafe/mis.hpp>
#include <ngacsafe/model.hpp>
#include <ngacsafe/reductions.hpp>
#include <ngacsafe/safety.hpp>
#include <ngacsafe/state_ops.hpp>
#include <ngacsafe/supergraph.hpp>
#include <ngacsafe/validate.hpp>

#endif // NGACSAFE_NGACSAFE_HPP
