"""One-call evaluation of every squeezing and entanglement quantity for a state."""

from dataclasses import dataclass
from typing import Optional

from spinsq import pairwise
from spinsq.dicke import CollectiveMoments, SymmetricState, moments
from spinsq.pairwise import XStateParams
from spinsq.squeezing import SqueezingReport, classify_below_one, xi_t


@dataclass(frozen=True)
class StateReport:
    moments: CollectiveMoments
    squeezing: SqueezingReport
    concurrence: float
    entanglement_margin: float
    xparams: Optional[XStateParams]
    czz: float
    parity: str

    @property
    def squeezed_t(self):
        return classify_below_one(self.squeezing.xi_t2)

    @property
    def squeezed_s(self):
        return classify_below_one(self.squeezing.xi_s2)

    @property
    def entangled(self):
        return pairwise.classify_entangled(self.entanglement_margin)

    def to_dict(self):
        out = {"N": self.moments.n_particles, "parity": self.parity}
        out.update(self.squeezing.to_dict())
        out.update(
            concurrence=self.concurrence,
            squeezed_T=self.squeezed_t,
            entangled=self.entangled,
            czz=self.czz,
            j1=self.moments.j1.tolist(),
            G=self.moments.G.tolist(),
            xstate=None if self.xparams is None else self.xparams.to_dict(),
        )
        return out


def evaluate(state: SymmetricState) -> StateReport:
    m = moments(state)
    rep = xi_t(m)
    if m.has_parity_symmetry():
        xp = pairwise.xstate_params(m)
        margin = pairwise.xstate_margin(xp)
    else:
        xp = None
        margin = pairwise.wootters_margin(pairwise.reduced_density(m))
    return StateReport(
        moments=m,
        squeezing=rep,
        concurrence=max(0.0, margin),
        entanglement_margin=margin,
        xparams=xp,
        czz=pairwise.czz(m),
        parity=state.support_parity(),
    )
