/**
 * Protocol types and transports.
 *
 * Every message is {version, request, payload}; responses carry the
 * snapshot id they answer. The viewer computes no geometry: all rendered
 * coordinates originate from these responses.
 */

export type Pt = [number, number];

export interface SceneSite {
  id: string;
  pos: Pt;
}

export interface Scene {
  polygon: Pt[];
  sites: SceneSite[];
}

export interface EdgeProvenance {
  kind: string; // 'domain' | 'bisector' | 'degeneracy' | 'unknown'
  pair: [string, string] | null;
  domain_edge: number | null;
  sector_edges: number[] | null;
  conic: number[] | null;
  k: number | null;
}

export interface CellDump {
  site: string;
  polyline: Pt[];
  edges: EdgeProvenance[];
}

export interface DegeneracyDump {
  pair: [string, string];
  vanishing_point: [number, number, number];
  region: Pt[];
  tie_assignment: string;
}

export interface DiagramDump {
  scene: Scene;
  cells: CellDump[];
  degeneracies: DegeneracyDump[];
}

export interface MoveEvent {
  u: number;
  other: string;
  vanishing_point: number[];
  edge_pair: number[];
}

export interface ProtocolError {
  code: number; // 2 input error, 3 geometric degeneracy
  message: string;
  details?: Record<string, unknown>;
}

export interface ProtocolResponse {
  version: number;
  request: string;
  snapshot_id?: string;
  result?: Record<string, any>;
  error?: ProtocolError;
}

export interface Transport {
  send(request: string, payload: object): Promise<ProtocolResponse>;
}

/** JSON with sorted keys and no whitespace (matches the recorder). */
export function canonicalJson(value: unknown): string {
  if (value === null || typeof value !== 'object') {
    return JSON.stringify(value);
  }
  if (Array.isArray(value)) {
    return '[' + value.map(canonicalJson).join(',') + ']';
  }
  const obj = value as Record<string, unknown>;
  const keys = Object.keys(obj).sort();
  return '{' + keys.map((k) => JSON.stringify(k) + ':' + canonicalJson(obj[k])).join(',') + '}';
}

export class HttpTransport implements Transport {
  constructor(private baseUrl: string = '') {}

  async send(request: string, payload: object): Promise<ProtocolResponse> {
    const r = await fetch(this.baseUrl + '/protocol', {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify({ version: 1, request, payload }),
    });
    if (!r.ok) {
      throw new Error(`protocol transport failure: ${r.status}`);
    }
    return (await r.json()) as ProtocolResponse;
  }
}

/** Replays recorded responses; used by the scripted UI tests. */
export class FixtureTransport implements Transport {
  readonly log: string[] = [];

  constructor(private fixtures: Record<string, ProtocolResponse>) {}

  async send(request: string, payload: object): Promise<ProtocolResponse> {
    const key = request + '|' + canonicalJson(payload);
    this.log.push(key);
    const hit = this.fixtures[key];
    if (!hit) {
      throw new Error('no recorded fixture for ' + key);
    }
    return JSON.parse(JSON.stringify(hit)) as ProtocolResponse;
  }
}

export class ProtocolClient {
  constructor(private transport: Transport) {}

  call(request: string, payload: object): Promise<ProtocolResponse> {
    return this.transport.send(request, payload);
  }
}
