// The building has 14 floors: 1-8 are the curriculum levels, 9-14 the
// feature floors in the pack's floor order. floorRoute is the single source
// of truth for the lift control's navigation targets.

import type { FloorKind, PackView } from './types.js';

export class IndexOutOfRange extends Error {
  constructor(index: number) {
    super(`floor index ${index} outside 1..14`);
  }
}

export interface FloorRoute {
  floorIndex: number;
  kind: { level: number } | { feature: FloorKind };
  routePath: string;
  title: string;
}

export function floorRoute(floorIndex: number, pack: PackView): FloorRoute {
  if (!Number.isInteger(floorIndex) || floorIndex < 1 || floorIndex > 14) {
    throw new IndexOutOfRange(floorIndex);
  }
  if (floorIndex <= 8) {
    const level = pack.levels[floorIndex - 1];
    return {
      floorIndex,
      kind: { level: level.number },
      routePath: `/levels/${level.number}`,
      title: level.title,
    };
  }
  const floor = pack.floors[floorIndex - 9];
  return {
    floorIndex,
    kind: { feature: floor.kind },
    routePath: `/floors/${floor.kind}`,
    title: floor.title,
  };
}

export function allFloorRoutes(pack: PackView): FloorRoute[] {
  const routes: FloorRoute[] = [];
  for (let i = 1; i <= 14; i++) {
    routes.push(floorRoute(i, pack));
  }
  return routes;
}
