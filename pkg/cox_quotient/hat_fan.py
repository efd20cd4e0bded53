import logging
from dataclasses import dataclass, field

import numpy as np

from config.errors import ErrorCode, ToriqError
from exact_linalg import primitive, to_vector
from fan_model import ConeKey, Fan, validate_fan
from cox_quotient.presentation import QuotientPresentation

logger = logging.getLogger(__name__)


@dataclass
class HatFan:
    """The lifted fan Δ̂ in SF̌ and the correspondence σ -> σ̂."""

    fan: Fan
    correspondence: dict[ConeKey, ConeKey]
    certificates: dict[str, bool] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.certificates.values())


def hat_fan(qp: QuotientPresentation) -> HatFan:
    """
    Assembles Δ̂ = {σ̂ : σ ∈ Δ} and certifies that it is a fan
    combinatorially equivalent to Δ, with matching dimensions and
    simpliciality, projecting onto Δ under the dual of ι.

    Raises:
        ToriqError: INTERNAL_INCONSISTENCY naming the failed certificates.
    """
    base = qp.fan
    lifted = Fan(
        rays=[qp.l[i] for i in base.ray_ids],
        maximal_cones=base.maximal_keys,
        ray_ids=base.ray_ids,
        lattice_rank=qp.rank,
        name=f"{base.name}^",
    )
    correspondence = {key: key for key in base.cones}

    certificates = {
        "valid_fan": validate_fan(lifted).valid,
        "poset": set(lifted.cones) == set(base.cones) and lifted.face_poset() == base.face_poset(),
        "dimensions": all(
            key in lifted.cones
            and lifted.cones[key].dim == cone.dim == qp.hat_cones[key].dim
            for key, cone in base.cones.items()
        ),
        "simplicial": all(
            key in lifted.cones and lifted.cones[key].is_simplicial() == cone.is_simplicial()
            for key, cone in base.cones.items()
        ),
    }

    # the dual of ι sends l_ρ to a positive multiple of n_ρ
    projection = qp.lattice.iota_matrix.T
    images = {i: to_vector(projection.dot(np.array(qp.l[i], dtype=object))) for i in base.ray_ids}
    certificates["projection"] = all(
        any(images[i]) and primitive(images[i]) == base.ray(i) for i in base.ray_ids
    )

    failed = [name for name, passed in certificates.items() if not passed]
    if failed:
        raise ToriqError(
            ErrorCode.INTERNAL_INCONSISTENCY,
            f"Lifted fan of {base.name} failed certificates {failed}.",
            {"failed_certificates": failed},
        )
    logger.info(f"✅ Lifted fan of {base.name}: {len(lifted.cones)} cones, all certificates passed.")
    return HatFan(fan=lifted, correspondence=correspondence, certificates=certificates)
