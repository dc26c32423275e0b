"""Write the demo input files the README and CLI examples use.

Creates, in the chosen output directory:
  surface.json     genus-2 pants decomposition with the handlebody inclusion
  fuchsian.json    a Fuchsian representation of that surface
  bent.json        the same surface bent along cuff a1 by 0.4
  pure_bend.json   quake-bend path bending a1 from 0 to 0.5 (64 steps)
  twist_loop.json  closed loop twisting a1 by a full 2 pi bend
"""

import argparse
import math
import os

from pleatbend.representation import (fenchel_nielsen_rep, path_from_parameters,
                                      save_path, save_rep)
from pleatbend.topology import (BoundaryComponent, BoundaryInclusion,
                                save_document, standard_decomposition)

LENGTHS = (2.0, 1.7, 2.3)
TWISTS = (0.3, 0.1, 0.2)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="demo", help="output directory")
    ap.add_argument("--steps", type=int, default=64)
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)

    pd = standard_decomposition(2)
    comp = BoundaryComponent(
        surface_generators=("a1", "b1", "a2", "b2"),
        generator_words=("x", "", "y", ""),
        peripheral_words=("a1", "a2", "a1a2", "a1A2"))
    inc = BoundaryInclusion(generators=("x", "y"), relators=(),
                            components=(comp,))
    save_document(os.path.join(args.out, "surface.json"), pd, inc)

    lengths = {c.id: v for c, v in zip(pd.cuffs, LENGTHS)}
    twists = {c.id: v for c, v in zip(pd.cuffs, TWISTS)}
    save_rep(os.path.join(args.out, "fuchsian.json"),
             fenchel_nielsen_rep(pd, lengths, twists))

    bent = dict(twists)
    bent[pd.cuffs[0].id] = TWISTS[0] + 0.4j
    save_rep(os.path.join(args.out, "bent.json"),
             fenchel_nielsen_rep(pd, lengths, bent))

    c0 = pd.cuffs[0].id
    save_path(os.path.join(args.out, "pure_bend.json"),
              path_from_parameters(
                  pd, lambda t: lengths,
                  lambda t: {**twists, c0: TWISTS[0] + 0.5j * t},
                  steps=args.steps))

    save_path(os.path.join(args.out, "twist_loop.json"),
              path_from_parameters(
                  pd, lambda t: lengths,
                  lambda t: {**twists, c0: TWISTS[0] + 2j * math.pi * t},
                  steps=args.steps))

    print(f"wrote demo inputs to {args.out}/")


if __name__ == "__main__":
    main()
