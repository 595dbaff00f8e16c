/**
 * Protocol types and transports.
 *
 * Every message is {version, request, payload}; responses carry the
 * snapshot id they answer. The viewer computes no geometry: all rendered
 * coordinates originate from these responses.
 */
/** JSON with sorted keys and no whitespace (matches the recorder). */
export function canonicalJson(value) {
    if (value === null || typeof value !== 'object') {
        return JSON.stringify(value);
    }
    if (Array.isArray(value)) {
        return '[' + value.map(canonicalJson).join(',') + ']';
    }
    const obj = value;
    const keys = Object.keys(obj).sort();
    return '{' + keys.map((k) => JSON.stringify(k) + ':' + canonicalJson(obj[k])).join(',') + '}';
}
export class HttpTransport {
    constructor(baseUrl = '') {
        this.baseUrl = baseUrl;
    }
    async send(request, payload) {
        const r = await fetch(this.baseUrl + '/protocol', {
            method: 'POST',
            headers: { 'Content-Type': 'application/json' },
            body: JSON.stringify({ version: 1, request, payload }),
        });
        if (!r.ok) {
            throw new Error(`protocol transport failure: ${r.status}`);
        }
        return (await r.json());
    }
}
/** Replays recorded responses; used by the scripted UI tests. */
export class FixtureTransport {
    constructor(fixtures) {
        this.fixtures = fixtures;
        this.log = [];
    }
    async send(request, payload) {
        const key = request + '|' + canonicalJson(payload);
        this.log.push(key);
        const hit = this.fixtures[key];
        if (!hit) {
            throw new Error('no recorded fixture for ' + key);
        }
        return JSON.parse(JSON.stringify(hit));
    }
}
export class ProtocolClient {
    constructor(transport) {
        this.transport = transport;
    }
    call(request, payload) {
        return this.transport.send(request, payload);
    }
}
