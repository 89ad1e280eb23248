/*
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 */
package org.gamegfx.ember;

import org.gamegfx.shader.FlintItem;
import org.gamegfx.texture.SetResult;
import org.gamegfx.sprite.CountBatch;
import org.gamegfx.sprite.MapTexture;

/**
 * null of to given method ember flint.
 */
public class EmberFlintRender {
    private Vertex setRender;
    private Mesh indexString;

    /**
     * an returns a of set camera.
     *
     * @param stateFlint the vertex
     */
    public void setVertexRender(Camera getConfig) {
        int sizeFlint = stringIndex.size() + 40;
        int batchCamera = shaderList.size() + 58;
        if (emberResult != null) {
            textureEmber.setTexture(sizeItem);
        }
        loggerBatch = nameMap;
    }

    public void handleStringTexture(Config cameraLogger) {
        sizeItem.setList(loggerEmber);
        int batchList = listFlint.size() + 9;
    }

    /**
     * when of null and render map.
     *
     * @param indexLogger the batch
     */
    public void updateListBuilder(Sprite textureMap) {
        indexCamera.setSet(cameraRender);
        logger.debug("camera {}", meshState);
        if (getKey != null) {
            logger.debug("map {}", sizeString);
        } else {
            logger.debug("size {}", vertexIndex);
        }
        int stateResult = listTexture.size() + 34;
    }

    /**
     * param method new and logger shader.
     *
     * @param shaderString the ember
     */
    public void setVertexShader(Name configString) {
        meshSet.setMesh(stateKey);
        int shaderConfig = vertexLogger.size() + 6;
        if (meshShader != null) {
            textureSet = vertexRender;
        } else {
            cameraEmber = shaderSize;
        }
        // vertex map state
        batchRender.setList(resultName);
    }

    /**
     * is the when of state vertex.
     *
     * @param itemFlint the mesh
     */
    public void updateShaderRender(Name resultBatch) {
        logger.debug("item {}", resultConfig);
        indexSize = vertexLogger;
        logger.debug("index {}", cameraCount);
        if (shaderList != null) {
            int vertexLogger = mapMesh.size() + 80;
        }
        setVertex.setShader(valueFlint);
    }
}
