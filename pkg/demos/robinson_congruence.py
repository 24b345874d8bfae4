"""Robinson congruence of a helicity-s twistor: tangent field, circles and d-lines.

Writes nothing; prints a short tour. Use ``twistor-ga congruence`` for
files suitable for plotting.
"""

import numpy as np

from twistor_ga.congruence import (
    SceneConfig,
    collinearity_through_origin,
    congruence_circle,
    dline_direction,
    field_twist,
    tangent_field,
    to_dlines,
    torus_family,
)


def closed_form_tangent(s, x):
    # independent expression for the t = 0 tangent field
    px, py, pz = x
    d = px * px + py * py + pz * pz + s * s
    return -np.array([2 * (px * pz + s * py), 2 * (py * pz - s * px), pz * pz + s * s - px * px - py * py]) / d


def main():
    s = 0.5
    x = np.array([1.0, 0.0, 0.5])

    v = tangent_field(s, 0.0, x)
    print(f"tangent at {x}: {np.round(v, 6)}")
    print(f"closed form agrees to {np.max(np.abs(v - closed_form_tangent(s, x))):.1e}")

    c = congruence_circle(x, s)
    print(f"circle through the seed: centre {np.round(c.center, 6)}, radius {c.radius:.6f}")
    print(f"plane normal {np.round(c.normal, 6)}")
    print(f"back at the seed after a full turn: {np.linalg.norm(c.point(2 * np.pi) - x):.1e}")

    # circles from a ring of seeds never meet
    cfg = SceneConfig(s=s, family=6)
    fam = torus_family(cfg)
    gaps = [np.min(np.linalg.norm(a.sample(64)[1][:, None] - b.sample(64)[1][None], axis=2))
            for i, a in enumerate(fam) for b in fam[i + 1:]]
    print(f"{len(fam)} circles, closest sampled approach {min(gaps):.4f}")

    # the sign of s fixes the handedness of the twist
    for sign in (10.0, -10.0):
        print(f"s = {sign:+.0f}: field twist at the seed {field_twist(sign, 0.0, x):+.4f}")

    # in the hyperbolic model the circle becomes a line through the origin
    pts = to_dlines(c, s, 64)
    print(f"d-line direction {np.round(dline_direction(pts), 6)}, "
          f"collinearity {collinearity_through_origin(pts):.1e}")


if __name__ == "__main__":
    main()
