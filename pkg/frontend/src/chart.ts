// SVG rendering of membership functions. Coordinates are emitted verbatim in
// the function's own [0,1]x[0,1] space: the viewBox does the scaling and a
// group transform flips y so membership 1 sits at the top. The numbers the
// API sent are the numbers that end up in the markup, untouched.

export interface Vertices {
  gamma: number;
  alpha: number;
  beta: number;
  delta: number;
}

const FLIP = 'translate(0,1) scale(1,-1)';

export function vertexPoints(v: Vertices): string {
  return `${v.gamma},0 ${v.alpha},1 ${v.beta},1 ${v.delta},0`;
}

/** Small filled trapezoid, used as a thumbnail in the lexicon browser. */
export function trapezoidSvg(v: Vertices, cssClass = 'trapezoid'): string {
  return (
    `<svg class="${cssClass}" viewBox="0 0 1 1" preserveAspectRatio="none" aria-hidden="true">` +
    `<g transform="${FLIP}">` +
    `<polygon points="${vertexPoints(v)}" vector-effect="non-scaling-stroke" />` +
    `</g></svg>`
  );
}

/**
 * Full curve figure: the sampled polyline from the curve endpoint plus a dot
 * on each of the four vertices (gamma,0) (alpha,1) (beta,1) (delta,0).
 */
export function curveSvg(v: Vertices, points: [number, number][]): string {
  const line = points.map(([x, mu]) => `${x},${mu}`).join(' ');
  const dots = [
    [v.gamma, 0],
    [v.alpha, 1],
    [v.beta, 1],
    [v.delta, 0]
  ]
    .map(([x, mu]) => `<circle cx="${x}" cy="${mu}" r="0.018" vector-effect="non-scaling-stroke" />`)
    .join('');
  return (
    `<svg class="curve" viewBox="0 0 1 1" preserveAspectRatio="none" role="img">` +
    `<g transform="${FLIP}">` +
    `<polygon class="area" points="${vertexPoints(v)}" />` +
    `<polyline points="${line}" fill="none" vector-effect="non-scaling-stroke" />` +
    dots +
    `</g></svg>`
  );
}
