/** Typed client for the adjudication service. The UI talks to the service
 * exclusively through this module; tests inject a fake fetch. */
export class ApiError extends Error {
    constructor(code, status, message) {
        super(message);
        this.code = code;
        this.status = status;
        this.name = "ApiError";
    }
}
async function throwFrom(response) {
    let code = "HTTP_ERROR";
    let message = `${response.status} ${response.statusText}`;
    try {
        const body = await response.json();
        if (body && typeof body.code === "string") {
            code = body.code;
            message = body.message ?? message;
        }
    }
    catch {
        // non-JSON error body; keep the generic message
    }
    throw new ApiError(code, response.status, message);
}
export class ApiClient {
    constructor(fetchFn, base = "") {
        this.base = base;
        this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
    }
    async json(path, init) {
        const response = await this.fetchFn(this.base + path, init);
        if (!response.ok)
            await throwFrom(response);
        return (await response.json());
    }
    session() {
        return this.json("/api/session");
    }
    sentences(only) {
        const query = only ? `?only=${only}` : "";
        return this.json(`/api/sentences${query}`);
    }
    sentence(index) {
        return this.json(`/api/sentences/${index}`);
    }
    progress() {
        return this.json("/api/progress");
    }
    postResolution(index, request) {
        return this.json(`/api/sentences/${index}/resolutions`, {
            method: "POST",
            headers: { "content-type": "application/json" },
            body: JSON.stringify(request),
        });
    }
    deleteResolution(index, tokenId) {
        return this.json(`/api/sentences/${index}/resolutions/${tokenId}`, {
            method: "DELETE",
        });
    }
    async exportGold(allowPartial) {
        const response = await this.fetchFn(`${this.base}/api/export?allow_partial=${allowPartial}`);
        if (!response.ok)
            await throwFrom(response);
        return response.text();
    }
}
